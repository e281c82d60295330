#pragma once

#include <functional>
#include <span>
#include <vector>

namespace beliefq::num {

/// Adaptive Gauss-Legendre integral of f over [a, b] to relative tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-12);

/// Same, but the interval is first split at the given interior abscissae so
/// each panel sees a smooth integrand (kinks kill spectral convergence).
double integrate_split(const std::function<double(double)>& f, double a, double b,
                       std::span<const double> splits, double rel_tol = 1e-12);

/// Bisection root of a function with opposite signs at lo and hi.
/// Converges unconditionally for continuous f; returns the bracket midpoint
/// once |hi - lo| <= xtol.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              double xtol = 1e-12);

struct Maximum {
    double x;
    double value;
};

/// Golden-section maximization of a unimodal function on [a, b].
Maximum golden_max(const std::function<double(double)>& f, double a, double b,
                   double xtol = 1e-9);

/// Seeded maximization: scans `seeds` equispaced points, refines the best
/// bracket by golden section, and cross-checks any second separated local
/// maximum. Throws NonUnimodal when two refined maxima differ by more than
/// 1e-6 relative (a genuinely bimodal objective, not numerical ripple).
Maximum guarded_max(const std::function<double(double)>& f, double a, double b,
                    int seeds = 64, double xtol = 1e-9);

/// Runs fn(i) for i in [0, n) across worker threads. Results must be written
/// to preallocated slots indexed by i, which keeps output deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace beliefq::num
