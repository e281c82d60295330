#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "beliefq/errors.hpp"

namespace beliefq {

/// Information available to customers, ordered by decreasing content.
enum class InfoCase { Classical, SharedBelief, PrivateBelief };

const char* to_string(InfoCase c);

/// True system primitives. Fields carry the conventional queueing symbols:
/// R reward per completed service, C waiting cost per unit time, mu service
/// rate, s2 = E[S^2] second moment of the service time, lambda true Poisson
/// arrival rate.
struct SystemParams {
    double R = 0.0;
    double C = 0.0;
    double mu = 0.0;
    double s2 = 0.0;
    double lambda = 0.0;

    /// Validating factory; throws ValidationError on any hard violation
    /// (R < C/mu, lambda outside (0, mu), s2 < 1/mu^2).
    static SystemParams make(double R, double C, double mu, double s2, double lambda);

    /// Exponential service within 1e-12 relative (s2 == 2/mu^2).
    bool is_mm1() const;
};

namespace detail {

/// Pollaczek-Khinchine mean time in system at effective rate x (no guards).
inline double pk_wait(double mu, double s2, double x) {
    return x * s2 / (2.0 * (1.0 - x / mu)) + 1.0 / mu;
}

}  // namespace detail

/// Population belief about the arrival rate: a bounded positive-support
/// distribution, one of three variants. Immutable after construction.
class BeliefDistribution {
public:
    enum class Kind { Discrete, Uniform, Tabulated };

    /// Atoms (lambda_i, weight_i); weights must sum to 1 within 1e-12.
    static BeliefDistribution discrete(std::vector<std::pair<double, double>> atoms);
    /// Degenerate single-atom belief (oracle/degenerate tests only).
    static BeliefDistribution point_mass(double lam);
    static BeliefDistribution uniform(double a, double b);
    /// Piecewise-linear density through the grid points; renormalized at
    /// construction, the deviation from 1 is recorded.
    static BeliefDistribution tabulated(std::vector<std::pair<double, double>> grid);

    Kind kind() const { return kind_; }
    double lambda_min() const { return lambda_min_; }
    double lambda_max() const { return lambda_max_; }
    /// E[Lambda]
    double mean() const { return mean_; }
    /// E[1/Lambda]
    double inv_mean() const { return inv_mean_; }
    bool is_point_mass() const;
    /// |1 - raw density integral| before renormalization (tabulated only).
    double renorm_deviation() const { return renorm_deviation_; }

    /// P(Lambda <= x), exact per variant.
    double cdf(double x) const;

    /// E[g(Lambda)]. Discrete: exact weighted sum. Continuous variants:
    /// adaptive Gauss-Legendre, split at the supplied kink abscissae.
    double expect(const std::function<double(double)>& g,
                  std::span<const double> kinks = {}) const;

    /// Integral of g dF over (lo, hi]; atoms at lo are excluded, atoms at hi
    /// included, matching the split convention of the clipped-ratio pieces.
    double partial_expect(const std::function<double(double)>& g, double lo,
                          double hi) const;

    /// One draw from the belief; a single uniform variate per call.
    double sample(std::mt19937_64& rng) const;

    const std::vector<std::pair<double, double>>& atoms() const { return atoms_; }
    const std::vector<std::pair<double, double>>& grid() const { return grid_; }
    double uniform_lo() const { return uniform_lo_; }
    double uniform_hi() const { return uniform_hi_; }

private:
    BeliefDistribution() = default;

    Kind kind_ = Kind::Uniform;
    std::vector<std::pair<double, double>> atoms_;   // discrete
    std::vector<std::pair<double, double>> grid_;    // tabulated (lambda, density)
    std::vector<double> cum_;                        // cumulative mass per atom/segment
    double uniform_lo_ = 0.0, uniform_hi_ = 0.0;
    double lambda_min_ = 0.0, lambda_max_ = 0.0;
    double mean_ = 0.0, inv_mean_ = 0.0;
    double renorm_deviation_ = 0.0;
};

/// Uniform interface for the expectations the case formulas need.
struct ExpectationRequest {
    enum class Transform {
        Waiting,         // E[W(q Lambda)]
        WaitingSquared,  // E[W^2(q Lambda)]
        Reciprocal,      // E[1/Lambda]
        IndicatorBelow,  // P(Lambda <= xi)
        ClippedRatio,    // E[min(xi/Lambda, 1)]
    };

    Transform transform;
    double q = 1.0;   // joining probability for the W transforms
    double xi = 0.0;  // threshold for IndicatorBelow / ClippedRatio
};

/// Evaluates the requested expectation. Throws UnstableRegime when a W
/// transform is asked for with q * lambda_max >= mu.
double expect(const BeliefDistribution& belief, const ExpectationRequest& req,
              const SystemParams& params);

struct ValidationIssue {
    enum class Severity { Hard, Warning };
    Severity severity;
    std::string code;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;

    bool ok() const;            // no hard errors
    bool clean() const;         // no issues at all
    std::string summary() const;
};

/// Report-returning validation of the params/belief pair. Hard errors:
/// stability, R >= C/mu, service-moment bound, support cap lambda_max <= mu.
/// Support not straddling lambda and degenerate beliefs are warnings.
ValidationReport validate(const SystemParams& params, const BeliefDistribution& belief);

/// Params-only checks, usable on raw aggregates before make().
ValidationReport validate_params(const SystemParams& params);

}  // namespace beliefq
