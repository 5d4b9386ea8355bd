#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "resq/errors.hpp"
#include "resq/infotheory.hpp"
#include "resq/pmf.hpp"
#include "resq/sdt.hpp"

namespace resq {

// Whether the human actively authorizes each engagement (in the loop) or
// passively supervises with veto power (on the loop). The two modes carry the
// same information flow, so the flag is echoed in reports but never changes
// any computed value.
enum class LoopMode { in_loop, on_loop };

// The aided-decision scenario: an automated binary classifier screens each
// entity, the human sees the classification plus an independent observation
// and selects engage/abort.
struct ScenarioParams {
    double p_t;            // prior probability the entity is a target
    double d_human;        // human detection sensitivity
    double d_automation;   // automation detection sensitivity
    double v_ratio_automation = 2.0 / 3.0;  // cost-benefit ratio placing the automation criterion
    double v_ratio_human = 2.0 / 3.0;       // cost-benefit ratio encoding the human's preferences
    std::optional<double> beta_automation_override;  // explicit automation criterion
    std::optional<double> beta_human_base_override;  // explicit unaided human criterion
    LoopMode loop_mode = LoopMode::in_loop;

    void validate() const {
        if (!(p_t > 0.0 && p_t < 1.0))
            throw ValidationError("ScenarioParams: p_t must lie strictly inside (0,1)");
        for (double d : {d_human, d_automation}) {
            if (!(d > 0.0) || !std::isfinite(d))
                throw ValidationError("ScenarioParams: sensitivities must be > 0 and finite");
            if (d > kMaxDPrime)
                throw ValidationError("ScenarioParams: sensitivities are capped at 50");
        }
        for (double v : {v_ratio_automation, v_ratio_human})
            if (!(v > 0.0) || !std::isfinite(v))
                throw ValidationError("ScenarioParams: payoff ratios must be > 0 and finite");
        for (const auto& o : {beta_automation_override, beta_human_base_override})
            if (o && (!(*o > 0.0) || !std::isfinite(*o)))
                throw ValidationError("ScenarioParams: criterion overrides must be > 0 and finite");
    }
};

// The human's two posterior-updated criteria, one per automation
// classification branch.
struct DualCriteria {
    double beta_given_alarm;
    double beta_given_noise;
    double c_given_alarm;
    double c_given_noise;
};

// Distribution of the automation classification Y, the joint of (Y, X), and
// the distribution of the human action X.
struct AidedTables {
    Pmf dist_y;
    JointPmf joint_xy;
    Pmf dist_x;
};

// Full evaluation record of one scenario.
struct ResponsibilityReport {
    ScenarioParams params;
    double beta_automation;
    double cutoff_automation;
    OutcomeRates automation;
    DualCriteria criteria;
    AidedTables tables;
    double h_x;
    double h_y;
    double h_xy;
    double h_x_given_y;
    double resp;
};

// Effective automation criterion: the override if present, else the
// expected-value-optimal criterion for (p_t, v_ratio_automation).
inline double automation_beta(const ScenarioParams& params) {
    params.validate();
    return params.beta_automation_override ? *params.beta_automation_override
                                           : optimal_beta(params.p_t, params.v_ratio_automation);
}

// True classification rates of the automation.
inline OutcomeRates automation_rates(const ScenarioParams& params) {
    const double beta = automation_beta(params);
    return outcome_rates(params.d_automation, cutoff_from_beta(params.d_automation, beta));
}

namespace detail {

// The human's effective cost-benefit ratio. An explicit unaided criterion is
// inverted through beta = ((1-p)/p)*v, so diverging criteria model diverging
// value estimates while the human stays Bayes-rational.
inline double human_v_ratio(const ScenarioParams& params) {
    return params.beta_human_base_override
               ? *params.beta_human_base_override * params.p_t / (1.0 - params.p_t)
               : params.v_ratio_human;
}

inline double branch_beta(double posterior, double v_ratio_human, const char* branch) {
    if (!(posterior > 0.0 && posterior < 1.0))
        throw ValidationError(std::string("dual_criteria: posterior saturated on the ") + branch +
                              " branch; criterion undefined");
    return (1.0 - posterior) / posterior * v_ratio_human;
}

}  // namespace detail

// The human's optimal criteria after updating the prior with the automation's
// classification: one criterion for the alarm branch, one for the silence
// branch. `automation` carries the classification rates the human believes
// in; pass automation_rates(params) for a correctly informed human, or other
// rates to study misestimation.
inline DualCriteria dual_criteria(const ScenarioParams& params, const OutcomeRates& automation) {
    params.validate();
    const double v_h = detail::human_v_ratio(params);
    const double post_alarm = posterior_target_given_alarm(params.p_t, automation);
    const double post_noise = posterior_target_given_noise(params.p_t, automation);
    const double beta_alarm = detail::branch_beta(post_alarm, v_h, "alarm");
    const double beta_noise = detail::branch_beta(post_noise, v_h, "noise");
    return DualCriteria{beta_alarm, beta_noise, cutoff_from_beta(params.d_human, beta_alarm),
                        cutoff_from_beta(params.d_human, beta_noise)};
}

// The human's conditional outcome rates on each branch. The human's
// observation is independent of the automation's given the entity state, so
// only the cutoff differs between branches.
inline std::pair<OutcomeRates, OutcomeRates> human_conditional_rates(const ScenarioParams& params,
                                                                     const DualCriteria& dual) {
    return {outcome_rates(params.d_human, dual.c_given_alarm),
            outcome_rates(params.d_human, dual.c_given_noise)};
}

// Distribution of Y, joint of (Y, X), and distribution of X for a scenario.
// Row sums of the joint reproduce dist_y and column sums dist_x to float
// accuracy; both identities are checked by tests at 1e-12.
inline AidedTables build_tables(const ScenarioParams& params) {
    const OutcomeRates auto_rates = automation_rates(params);
    const DualCriteria dual = dual_criteria(params, auto_rates);
    const auto [given_alarm, given_noise] = human_conditional_rates(params, dual);

    const double w_target_alarm = params.p_t * auto_rates.p_tp;          // P(T, Y=target)
    const double w_noise_alarm = (1.0 - params.p_t) * auto_rates.p_fp;   // P(N, Y=target)
    const double w_target_silent = params.p_t * auto_rates.p_fn;         // P(T, Y=noise)
    const double w_noise_silent = (1.0 - params.p_t) * auto_rates.p_tn;  // P(N, Y=noise)

    const double cell_te = w_target_alarm * given_alarm.p_tp + w_noise_alarm * given_alarm.p_fp;
    const double cell_ta = w_target_alarm * given_alarm.p_fn + w_noise_alarm * given_alarm.p_tn;
    const double cell_ne = w_target_silent * given_noise.p_tp + w_noise_silent * given_noise.p_fp;
    const double cell_na = w_target_silent * given_noise.p_fn + w_noise_silent * given_noise.p_tn;

    const std::vector<std::string> y_labels{"target", "noise"};
    const std::vector<std::string> x_labels{"engage", "abort"};
    return AidedTables{
        Pmf(y_labels, {w_target_alarm + w_noise_alarm, w_target_silent + w_noise_silent}),
        JointPmf(y_labels, x_labels, {{cell_te, cell_ta}, {cell_ne, cell_na}}),
        Pmf(x_labels, {cell_te + cell_ne, cell_ta + cell_na})};
}

// Probability the human engages an entity the automation classified as a
// target.
inline double engagement_probability_given_alarm(const ScenarioParams& params) {
    const OutcomeRates auto_rates = automation_rates(params);
    const DualCriteria dual = dual_criteria(params, auto_rates);
    const OutcomeRates given_alarm = outcome_rates(params.d_human, dual.c_given_alarm);
    const double post = posterior_target_given_alarm(params.p_t, auto_rates);
    return post * given_alarm.p_tp + (1.0 - post) * given_alarm.p_fp;
}

// End-to-end closed-form evaluation: Resp = H(X|Y)/H(X) over the scenario's
// (Y, X) joint.
inline ResponsibilityReport responsibility(const ScenarioParams& params) {
    const double beta_a = automation_beta(params);
    const double cutoff_a = cutoff_from_beta(params.d_automation, beta_a);
    const OutcomeRates auto_rates = outcome_rates(params.d_automation, cutoff_a);
    const DualCriteria dual = dual_criteria(params, auto_rates);
    AidedTables tables = build_tables(params);

    const double h_x = entropy(tables.dist_x);
    const double h_y = entropy(tables.dist_y);
    const double h_xy = joint_entropy(tables.joint_xy);
    if (h_x <= 0.0)
        throw DegenerateEntropyError(
            "responsibility: the human action X is constant (H(X) = 0); the measure is undefined",
            h_x, h_y);
    const double h_x_given_y = conditional_entropy(tables.joint_xy, Axis::row);
    const double resp = std::clamp(h_x_given_y / h_x, 0.0, 1.0);
    return ResponsibilityReport{params, beta_a, cutoff_a,    auto_rates, dual, std::move(tables),
                                h_x,    h_y,    h_xy,        h_x_given_y, resp};
}

}  // namespace resq
