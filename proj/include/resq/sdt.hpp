#pragma once

#include <cmath>
#include <string>

#include "resq/errors.hpp"
#include "resq/normal.hpp"

namespace resq {

// Beyond this d' the Gaussian tails saturate below representable precision;
// limits must be argued analytically, not numerically.
inline constexpr double kMaxDPrime = 50.0;

namespace detail {

inline void check_d_prime(double d_prime, bool allow_zero) {
    if (!std::isfinite(d_prime) || d_prime < 0.0 || (!allow_zero && d_prime == 0.0))
        throw ValidationError("d_prime must be " + std::string(allow_zero ? ">= 0" : "> 0") +
                              " and finite");
    if (d_prime > kMaxDPrime)
        throw ValidationError("d_prime exceeds the supported cap of 50");
}

}  // namespace detail

// A detector: sensitivity d' (separation of the two observation means, in
// standard-deviation units) and likelihood-ratio criterion beta.
struct SdtSensor {
    double d_prime = 1.0;
    double beta = 1.0;

    void validate() const {
        detail::check_d_prime(d_prime, /*allow_zero=*/true);
        if (!(beta > 0.0) || !std::isfinite(beta))
            throw ValidationError("SdtSensor: beta must be > 0 and finite");
    }
};

// Outcome values of the four classification results.
struct Payoffs {
    double v_tp, v_fn, v_fp, v_tn;

    void validate() const {
        if (!(v_tp > v_fn))
            throw ValidationError("Payoffs: v_tp must exceed v_fn");
        if (!(v_tn > v_fp))
            throw ValidationError("Payoffs: v_tn must exceed v_fp");
    }
};

// Conditional outcome rates of a binary detector.
struct OutcomeRates {
    double p_tp, p_fn, p_fp, p_tn;

    void validate() const {
        for (double p : {p_tp, p_fn, p_fp, p_tn})
            if (!(p >= 0.0 && p <= 1.0))
                throw ValidationError("OutcomeRates: probabilities must lie in [0,1]");
        if (std::abs(p_tp + p_fn - 1.0) > 1e-12 || std::abs(p_fp + p_tn - 1.0) > 1e-12)
            throw ValidationError("OutcomeRates: complements must pair to 1 within 1e-12");
    }
};

// Observation-scale cutoff for a likelihood-ratio criterion: c = ln(beta)/d'.
// Undefined at d' = 0 (any cutoff yields likelihood ratio 1).
inline double cutoff_from_beta(double d_prime, double beta) {
    detail::check_d_prime(d_prime, /*allow_zero=*/true);
    if (d_prime == 0.0)
        throw SingularCutoffError("cutoff_from_beta: criterion placement undefined at d' = 0");
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw ValidationError("cutoff_from_beta: beta must be > 0 and finite");
    return std::log(beta) / d_prime;
}

// Likelihood ratio at an observation-scale cutoff: beta = exp(d'·c).
inline double beta_from_cutoff(double d_prime, double c) {
    detail::check_d_prime(d_prime, /*allow_zero=*/false);
    if (!std::isfinite(c)) throw ValidationError("beta_from_cutoff: cutoff must be finite");
    return std::exp(d_prime * c);
}

// Outcome rates of an equal-variance Gaussian detector with means at +-d'/2
// and a cutoff c: p_tp = Phi(d'/2 - c), p_fp = Phi(-d'/2 - c).
inline OutcomeRates outcome_rates(double d_prime, double c) {
    detail::check_d_prime(d_prime, /*allow_zero=*/true);
    if (!std::isfinite(c)) throw ValidationError("outcome_rates: cutoff must be finite");
    const double p_tp = std_normal_cdf(0.5 * d_prime - c);
    const double p_fp = std_normal_cdf(-0.5 * d_prime - c);
    return OutcomeRates{p_tp, 1.0 - p_tp, p_fp, 1.0 - p_fp};
}

// The expected-value-maximizing criterion: beta* = ((1 - p_t)/p_t) * v_ratio.
inline double optimal_beta(double p_t, double v_ratio) {
    if (!(p_t > 0.0 && p_t < 1.0))
        throw ValidationError("optimal_beta: p_t must lie strictly inside (0,1)");
    if (!(v_ratio > 0.0) || !std::isfinite(v_ratio))
        throw ValidationError("optimal_beta: v_ratio must be > 0 and finite");
    return (1.0 - p_t) / p_t * v_ratio;
}

// Cost-benefit ratio of a payoff matrix: (v_tn - v_fp)/(v_tp - v_fn).
inline double v_ratio(const Payoffs& p) {
    p.validate();
    return (p.v_tn - p.v_fp) / (p.v_tp - p.v_fn);
}

// Bayes posterior that the entity is a target given the detector alarmed.
inline double posterior_target_given_alarm(double p_t, const OutcomeRates& rates) {
    rates.validate();
    const double denom = p_t * rates.p_tp + (1.0 - p_t) * rates.p_fp;
    if (!(denom > 0.0)) throw UnreachableBranchError("alarm");
    return p_t * rates.p_tp / denom;
}

// Bayes posterior that the entity is a target given the detector was silent.
inline double posterior_target_given_noise(double p_t, const OutcomeRates& rates) {
    rates.validate();
    const double denom = p_t * rates.p_fn + (1.0 - p_t) * rates.p_tn;
    if (!(denom > 0.0)) throw UnreachableBranchError("noise");
    return p_t * rates.p_fn / denom;
}

// Upper bound on the effective sensitivity of a human-automation tandem:
// sqrt(d_h^2 + d_a^2). The exact tandem value is below this (the automation
// forwards only a binary classification).
inline double d_effective_max(double d_human, double d_automation) {
    if (!(d_human >= 0.0) || !(d_automation >= 0.0))
        throw ValidationError("d_effective_max: sensitivities must be >= 0");
    return std::sqrt(d_human * d_human + d_automation * d_automation);
}

}  // namespace resq
