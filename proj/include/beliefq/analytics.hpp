#pragma once

#include <string>
#include <vector>

#include "beliefq/model.hpp"

namespace beliefq::analytics {

/// Pollaczek-Khinchine mean time in system at effective rate x.
/// Throws UnstableRegime unless 0 <= x < mu.
double waiting_time(const SystemParams& params, double x);

/// dW/dx at effective rate x.
double waiting_time_slope(const SystemParams& params, double x);

/// Effective arrival rate at which net utility is exactly zero given fee p;
/// clamps to 0 once the fee exhausts the surplus (p >= R - C/mu).
double xi_of_price(const SystemParams& params, double p);

/// Fee that induces threshold rate x. Inverse of xi_of_price on (0, mu).
double xi_inverse(const SystemParams& params, double x);

/// Effective rate whose waiting time equals w (inverse of waiting_time).
double rate_of_waiting_time(const SystemParams& params, double w);

struct PricePoint {
    double price;
    double xi;
};

PricePoint price_point(const SystemParams& params, double p);

/// Net benefit when everybody knows the true rate: R - p - C W(q lambda).
double u_classical(const SystemParams& params, double p, double q);

/// Net expected benefit over the shared belief: R - p - C E[W(q Lambda)].
double u_shared(const SystemParams& params, const BeliefDistribution& belief,
                double p, double q);

/// min(xi(p)/lambda, 1)
double q_classical_of_price(const SystemParams& params, double p);

/// Equilibrium joining probability under a shared belief: the unique root of
/// u_shared clamped at 1 (bisection, 1e-12 in q); 0 when no surplus remains.
double q_shared_of_price(const SystemParams& params, const BeliefDistribution& belief,
                         double p);

struct SharedThresholds {
    /// Threshold rate above which every shared-belief customer joins;
    /// equals mu - 1/E[W(Lambda)] for exponential service.
    double lambda_bar_s;
};

/// Throws UnstableRegime when E[W(Lambda)] diverges at the support cap.
SharedThresholds shared_saturation_threshold(const SystemParams& params,
                                             const BeliefDistribution& belief);

/// E[min(xi(p)/Lambda, 1)]: the population mean joining probability when each
/// customer acts on a private draw from the belief.
double mean_private_joining(const SystemParams& params, const BeliefDistribution& belief,
                            double p);

double revenue(const SystemParams& params, const BeliefDistribution& belief,
               InfoCase info, double p);

enum class WelfareVariant {
    Paper,     // E[lambda Q (R - C W(lambda Q))], waiting evaluated inside E
    Physical,  // lambda E[Q] (R - C W(lambda E[Q])), the simulator's quantity
};

double welfare(const SystemParams& params, const BeliefDistribution& belief,
               InfoCase info, double p, WelfareVariant variant = WelfareVariant::Physical);

/// One sweep row: fee, threshold rate, joining probabilities and the
/// revenue/welfare rates of all three cases. Fields that cannot be computed
/// stay NaN with the reason appended to notes.
struct MetricsRow {
    double price;
    double xi;
    double q_classical;
    double q_shared;
    double q_private_mean;
    double rev_classical;
    double rev_shared;
    double rev_private;
    double sw_classical;
    double sw_shared;
    double sw_private_paper;
    double sw_private_physical;
    std::vector<std::string> notes;
};

MetricsRow metrics_row(const SystemParams& params, const BeliefDistribution& belief,
                       double p);

}  // namespace beliefq::analytics
