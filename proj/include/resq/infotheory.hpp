#pragma once

#include <algorithm>
#include <cmath>

#include "resq/pmf.hpp"

namespace resq {

namespace detail {

// -sum p*log2(p) with 0*log2(0) := 0, implemented by skipping zero terms.
template <typename Range>
double entropy_bits(const Range& probs) {
    double h = 0.0;
    for (double p : probs)
        if (p > 0.0) h -= p * std::log2(p);
    return h;
}

}  // namespace detail

enum class Axis { row, col };

// Shannon entropy in bits.
inline double entropy(const Pmf& p) { return detail::entropy_bits(p.probs()); }

// Entropy of the flattened joint distribution, in bits.
inline double joint_entropy(const JointPmf& j) { return detail::entropy_bits(j.cells()); }

// H(other | conditioning) = H(joint) - H(conditioning marginal). Terms from
// zero-probability conditioning states contribute nothing by construction.
inline double conditional_entropy(const JointPmf& j, Axis conditioning) {
    const Pmf marginal = conditioning == Axis::row ? j.row_marginal() : j.col_marginal();
    const double h = joint_entropy(j) - entropy(marginal);
    return h < 0.0 ? 0.0 : h;  // clip float dust on deterministic joints
}

// I(X;Y) = H(row) + H(col) - H(joint), in bits; tiny negative float residue
// is clamped to exactly 0.
inline double mutual_information(const JointPmf& j) {
    const double i = entropy(j.row_marginal()) + entropy(j.col_marginal()) - joint_entropy(j);
    return (i < 0.0 && i >= -1e-12) ? 0.0 : i;
}

// Theil's uncertainty coefficient U(target | other) = I / H(target): the
// relative reduction in uncertainty about the target variable.
inline double theil_u(const JointPmf& j, Axis target) {
    const Pmf marginal = target == Axis::row ? j.row_marginal() : j.col_marginal();
    const double h_target = entropy(marginal);
    const Pmf other = target == Axis::row ? j.col_marginal() : j.row_marginal();
    if (h_target <= 0.0)
        throw DegenerateEntropyError("theil_u: target variable has zero entropy", h_target,
                                     entropy(other));
    const double u = mutual_information(j) / h_target;
    return std::clamp(u, 0.0, 1.0);
}

// Comparative human responsibility from a (Y, X) joint table with rows = the
// automation-side variable Y and columns = the human action X:
// Resp = H(X|Y) / H(X). 1 iff X is independent of Y; 0 iff X is a
// deterministic function of Y.
inline double responsibility_ratio(const JointPmf& j) {
    const double h_x = entropy(j.col_marginal());
    const double h_y = entropy(j.row_marginal());
    if (h_x <= 0.0)
        throw DegenerateEntropyError(
            "responsibility_ratio: the action variable X is constant (H(X) = 0); the measure is "
            "undefined",
            h_x, h_y);
    const double resp = conditional_entropy(j, Axis::row) / h_x;
    return std::clamp(resp, 0.0, 1.0);
}

}  // namespace resq
