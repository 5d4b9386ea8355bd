#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace resq {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad inputs: malformed distributions, out-of-range parameters, undefined
// criterion placement, unreachable decision branches. CLI exit code 1.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Criterion placement is undefined (d' = 0 has no likelihood-ratio cutoff).
class SingularCutoffError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// A conditioning branch has zero probability mass (e.g. the automation never
// alarms), so posterior updating is undefined on that branch.
class UnreachableBranchError : public ValidationError {
public:
    explicit UnreachableBranchError(const std::string& branch)
        : ValidationError("branch '" + branch + "' has zero probability; posterior undefined"),
          branch_(branch) {}
    const std::string& branch() const noexcept { return branch_; }

private:
    std::string branch_;
};

// Structural problems in a flow model (cycles, dangling parents, bad CPT
// rows, state-space guard). Carries the full diagnostic list. CLI exit code 2.
class ModelError : public Error {
public:
    explicit ModelError(std::vector<std::string> diagnostics)
        : Error(join(diagnostics)), diagnostics_(std::move(diagnostics)) {}
    explicit ModelError(const std::string& single)
        : ModelError(std::vector<std::string>{single}) {}
    const std::vector<std::string>& diagnostics() const noexcept { return diagnostics_; }

private:
    static std::string join(const std::vector<std::string>& ds) {
        std::string out = "model validation failed:";
        for (const auto& d : ds) out += "\n  - " + d;
        return out;
    }
    std::vector<std::string> diagnostics_;
};

// A ratio over a zero entropy was requested (e.g. Resp with H(X) = 0). The
// measure is undefined there; carries both entropies for diagnosis. CLI exit
// code 3.
class DegenerateEntropyError : public Error {
public:
    DegenerateEntropyError(const std::string& what, double h_target, double h_other)
        : Error(what), h_target_(h_target), h_other_(h_other) {}
    double h_target() const noexcept { return h_target_; }
    double h_other() const noexcept { return h_other_; }

private:
    double h_target_;
    double h_other_;
};

// An empirical sample is too degenerate to estimate from (all trials in one
// outcome category). CLI exit code 4.
class DegenerateSampleError : public Error {
public:
    using Error::Error;
};

}  // namespace resq
