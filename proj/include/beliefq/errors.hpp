#pragma once

#include <stdexcept>
#include <string>

namespace beliefq {

/// Effective arrival rate at or above the service rate: waiting time diverges.
struct UnstableRegime : std::domain_error {
    using std::domain_error::domain_error;
};

/// Operation requires exponential service (s2 == 2/mu^2).
struct NotMM1 : std::domain_error {
    using std::domain_error::domain_error;
};

/// Threshold rate outside the belief support.
struct OutOfSupport : std::domain_error {
    using std::domain_error::domain_error;
};

/// Hard invariant violation at construction or load time.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Maximization found two separated local maxima; both candidates attached.
struct NonUnimodal : std::runtime_error {
    double x_first, value_first;
    double x_second, value_second;

    NonUnimodal(double x1, double v1, double x2, double v2)
        : std::runtime_error("objective has two separated local maxima: f(" +
                             std::to_string(x1) + ")=" + std::to_string(v1) + " vs f(" +
                             std::to_string(x2) + ")=" + std::to_string(v2)),
          x_first(x1), value_first(v1), x_second(x2), value_second(v2) {}
};

/// Simulated utilization pinned at the stability edge; diagnostic abort.
struct UnstableEffective : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace beliefq
