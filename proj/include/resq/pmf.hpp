#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "resq/errors.hpp"

namespace resq {

namespace detail {

// Inputs off from 1 by at most this much are renormalized; larger errors are
// modeling bugs and are rejected.
inline constexpr double kNormTolerance = 1e-9;

inline void check_labels_unique(const std::vector<std::string>& labels, const char* what) {
    std::unordered_set<std::string> seen;
    for (const auto& l : labels) {
        if (!seen.insert(l).second)
            throw ValidationError(std::string(what) + ": duplicate label '" + l + "'");
    }
}

inline double checked_total(const std::vector<double>& probs, const char* what) {
    double total = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0) || !std::isfinite(p))
            throw ValidationError(std::string(what) + ": probabilities must be finite and >= 0");
        total += p;
    }
    if (std::abs(total - 1.0) > kNormTolerance)
        throw ValidationError(std::string(what) + ": probabilities sum to " + std::to_string(total) +
                              ", not 1 within 1e-9");
    return total;
}

}  // namespace detail

// A finite discrete probability mass function over named categories.
class Pmf {
public:
    Pmf(std::vector<std::string> labels, std::vector<double> probs)
        : labels_(std::move(labels)), probs_(std::move(probs)) {
        if (labels_.size() != probs_.size())
            throw ValidationError("Pmf: labels and probs must align 1:1");
        if (labels_.empty()) throw ValidationError("Pmf: empty distribution");
        detail::check_labels_unique(labels_, "Pmf");
        const double total = detail::checked_total(probs_, "Pmf");
        if (total != 1.0)
            for (double& p : probs_) p /= total;
    }

    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::vector<double>& probs() const noexcept { return probs_; }
    std::size_t size() const noexcept { return probs_.size(); }
    double operator[](std::size_t i) const { return probs_[i]; }

private:
    std::vector<std::string> labels_;
    std::vector<double> probs_;
};

// A two-dimensional joint probability table over named row/column categories.
// Throughout the library, rows carry the automation-side variable Y and
// columns the human-action variable X.
class JointPmf {
public:
    JointPmf(std::vector<std::string> row_labels, std::vector<std::string> col_labels,
             std::vector<std::vector<double>> cells)
        : row_labels_(std::move(row_labels)), col_labels_(std::move(col_labels)) {
        const std::size_t r = row_labels_.size(), c = col_labels_.size();
        if (r == 0 || c == 0) throw ValidationError("JointPmf: empty axis");
        detail::check_labels_unique(row_labels_, "JointPmf rows");
        detail::check_labels_unique(col_labels_, "JointPmf cols");
        if (cells.size() != r) throw ValidationError("JointPmf: row count mismatch");
        cells_.reserve(r * c);
        for (const auto& row : cells) {
            if (row.size() != c) throw ValidationError("JointPmf: column count mismatch");
            cells_.insert(cells_.end(), row.begin(), row.end());
        }
        const double total = detail::checked_total(cells_, "JointPmf");
        if (total != 1.0)
            for (double& p : cells_) p /= total;
    }

    std::size_t rows() const noexcept { return row_labels_.size(); }
    std::size_t cols() const noexcept { return col_labels_.size(); }
    const std::vector<std::string>& row_labels() const noexcept { return row_labels_; }
    const std::vector<std::string>& col_labels() const noexcept { return col_labels_; }
    const std::vector<double>& cells() const noexcept { return cells_; }
    double at(std::size_t r, std::size_t c) const { return cells_[r * cols() + c]; }

    Pmf row_marginal() const {
        std::vector<double> m(rows(), 0.0);
        for (std::size_t r = 0; r < rows(); ++r)
            for (std::size_t c = 0; c < cols(); ++c) m[r] += at(r, c);
        return Pmf(row_labels_, std::move(m));
    }

    Pmf col_marginal() const {
        std::vector<double> m(cols(), 0.0);
        for (std::size_t r = 0; r < rows(); ++r)
            for (std::size_t c = 0; c < cols(); ++c) m[c] += at(r, c);
        return Pmf(col_labels_, std::move(m));
    }

private:
    std::vector<std::string> row_labels_;
    std::vector<std::string> col_labels_;
    std::vector<double> cells_;  // row-major
};

}  // namespace resq
