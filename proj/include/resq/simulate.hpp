#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include "resq/aided_decision.hpp"
#include "resq/errors.hpp"
#include "resq/infotheory.hpp"
#include "resq/normal.hpp"
#include "resq/pmf.hpp"

namespace resq {

// Identifier of the documented sampling algorithm; implementations that adopt
// the same algorithm and seed reproduce counts exactly.
inline constexpr const char* kGeneratorId = "splitmix64_counter_invcdf_v1";

// Counter-based uniform generator: draw i is a pure function of (seed, i), so
// trials can be partitioned across workers without changing the stream.
// finalize is the splitmix64 output mix over seed + (i+1)*golden-gamma.
struct CounterRng {
    std::uint64_t seed = 0;

    std::uint64_t bits(std::uint64_t i) const noexcept {
        std::uint64_t z = seed + (i + 1) * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform on the open interval (0,1): ((x >> 11) + 0.5) * 2^-53
    double uniform(std::uint64_t i) const noexcept {
        return (static_cast<double>(bits(i) >> 11) + 0.5) * 0x1.0p-53;
    }

    // standard normal via the inverse CDF (keeps the draw count fixed per
    // trial, unlike rejection methods)
    double normal(std::uint64_t i) const { return std_normal_quantile(uniform(i)); }
};

struct SimConfig {
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;

    void validate() const {
        if (trials < 1) throw ValidationError("SimConfig: trials must be >= 1");
    }
};

struct SimResult {
    // counts[y][x], rows y in {target, noise}, cols x in {engage, abort}
    std::array<std::array<std::uint64_t, 2>, 2> counts{};
    JointPmf empirical_joint;
    double empirical_resp;
    double miller_madow_resp;  // bias-compensated comparison value, not authoritative
    double analytic_resp;
    double max_cell_abs_error;
    std::string generator;
    std::uint64_t seed;
    std::uint64_t trials;
};

// Plug-in responsibility estimate from empirical counts. The plug-in entropy
// estimator is biased low; callers wanting the compensated comparison value
// use miller_madow_responsibility.
inline double empirical_responsibility(const std::array<std::array<std::uint64_t, 2>, 2>& counts) {
    const std::uint64_t total = counts[0][0] + counts[0][1] + counts[1][0] + counts[1][1];
    if (total < 1) throw ValidationError("empirical_responsibility: no trials");
    if (counts[0][0] + counts[1][0] == 0 || counts[0][1] + counts[1][1] == 0)
        throw DegenerateSampleError(
            "empirical_responsibility: every trial landed in one action category; H(X) estimate "
            "is 0");
    const double n = static_cast<double>(total);
    const JointPmf j({"target", "noise"}, {"engage", "abort"},
                     {{counts[0][0] / n, counts[0][1] / n}, {counts[1][0] / n, counts[1][1] / n}});
    return responsibility_ratio(j);
}

namespace detail {

// Miller-Madow correction (k-1)/(2N ln 2) in bits, k = observed support size.
inline double miller_madow_term(std::size_t k, double n) {
    return (static_cast<double>(k) - 1.0) / (2.0 * n * std::numbers::ln2_v<double>);
}

inline double miller_madow_responsibility(
    const std::array<std::array<std::uint64_t, 2>, 2>& counts) {
    const double n =
        static_cast<double>(counts[0][0] + counts[0][1] + counts[1][0] + counts[1][1]);
    std::size_t k_xy = 0, k_x = 0, k_y = 0;
    const std::uint64_t col[2] = {counts[0][0] + counts[1][0], counts[0][1] + counts[1][1]};
    const std::uint64_t row[2] = {counts[0][0] + counts[0][1], counts[1][0] + counts[1][1]};
    for (const auto& r : counts)
        for (std::uint64_t c : r) k_xy += c > 0;
    for (std::uint64_t c : col) k_x += c > 0;
    for (std::uint64_t r : row) k_y += r > 0;

    const JointPmf j({"target", "noise"}, {"engage", "abort"},
                     {{counts[0][0] / n, counts[0][1] / n}, {counts[1][0] / n, counts[1][1] / n}});
    const double h_xy = joint_entropy(j) + miller_madow_term(k_xy, n);
    const double h_y = entropy(j.row_marginal()) + miller_madow_term(k_y, n);
    const double h_x = entropy(j.col_marginal()) + miller_madow_term(k_x, n);
    return (h_xy - h_y) / h_x;
}

}  // namespace detail

// Sample the generative aided-decision process. Trial i consumes exactly the
// three counter draws 3i (entity), 3i+1 (automation observation), 3i+2 (human
// observation), so results are a pure function of (params, seed).
inline SimResult simulate_aws(const ScenarioParams& params, const SimConfig& cfg) {
    params.validate();
    cfg.validate();

    const ResponsibilityReport analytic = responsibility(params);
    const double c_a = analytic.cutoff_automation;
    const double c_alarm = analytic.criteria.c_given_alarm;
    const double c_noise = analytic.criteria.c_given_noise;
    const double half_da = 0.5 * params.d_automation;
    const double half_dh = 0.5 * params.d_human;

    const CounterRng rng{cfg.seed};
    std::array<std::array<std::uint64_t, 2>, 2> counts{};
    for (std::uint64_t i = 0; i < cfg.trials; ++i) {
        const bool target = rng.uniform(3 * i) < params.p_t;
        const double obs_a = rng.normal(3 * i + 1) + (target ? half_da : -half_da);
        const bool alarm = obs_a > c_a;
        const double obs_h = rng.normal(3 * i + 2) + (target ? half_dh : -half_dh);
        const bool engage = obs_h > (alarm ? c_alarm : c_noise);
        ++counts[alarm ? 0 : 1][engage ? 0 : 1];
    }

    const double n = static_cast<double>(cfg.trials);
    JointPmf empirical({"target", "noise"}, {"engage", "abort"},
                       {{counts[0][0] / n, counts[0][1] / n},
                        {counts[1][0] / n, counts[1][1] / n}});
    double max_err = 0.0;
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c)
            max_err = std::max(max_err,
                               std::abs(empirical.at(r, c) - analytic.tables.joint_xy.at(r, c)));

    return SimResult{counts,
                     std::move(empirical),
                     empirical_responsibility(counts),
                     detail::miller_madow_responsibility(counts),
                     analytic.resp,
                     max_err,
                     kGeneratorId,
                     cfg.seed,
                     cfg.trials};
}

}  // namespace resq
