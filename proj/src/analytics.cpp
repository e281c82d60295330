#include "beliefq/analytics.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "beliefq/numerics.hpp"

namespace beliefq::analytics {

namespace {

constexpr double kQTol = 1e-12;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

}  // namespace

double waiting_time(const SystemParams& params, double x) {
    if (x < 0.0 || x >= params.mu) {
        throw UnstableRegime("effective rate must satisfy 0 <= x < mu");
    }
    return detail::pk_wait(params.mu, params.s2, x);
}

double waiting_time_slope(const SystemParams& params, double x) {
    const double r = 1.0 - x / params.mu;
    return params.s2 / (2.0 * r * r);
}

double xi_of_price(const SystemParams& params, double p) {
    const double surplus = params.R - p - params.C / params.mu;
    if (surplus <= 0.0) {
        return 0.0;
    }
    return 1.0 / (params.C * params.s2 / (2.0 * surplus) + 1.0 / params.mu);
}

double xi_inverse(const SystemParams& params, double x) {
    if (x < 0.0 || x >= params.mu) {
        throw UnstableRegime("threshold rate must satisfy 0 <= x < mu");
    }
    return params.R - params.C / params.mu -
           params.C * params.s2 * params.mu * x / (2.0 * (params.mu - x));
}

double rate_of_waiting_time(const SystemParams& params, double w) {
    // invert w = x s2 mu / (2 (mu - x)) + 1/mu
    const double excess = w - 1.0 / params.mu;
    if (excess <= 0.0) return 0.0;
    return 2.0 * params.mu * excess / (params.s2 * params.mu + 2.0 * excess);
}

PricePoint price_point(const SystemParams& params, double p) {
    return {p, xi_of_price(params, p)};
}

double u_classical(const SystemParams& params, double p, double q) {
    if (q < 0.0 || q > 1.0) {
        throw ValidationError("joining probability must lie in [0, 1]");
    }
    return params.R - p - params.C * waiting_time(params, q * params.lambda);
}

double u_shared(const SystemParams& params, const BeliefDistribution& belief, double p,
                double q) {
    return params.R - p -
           params.C * expect(belief, {ExpectationRequest::Transform::Waiting, q}, params);
}

double q_classical_of_price(const SystemParams& params, double p) {
    return std::min(xi_of_price(params, p) / params.lambda, 1.0);
}

double q_shared_of_price(const SystemParams& params, const BeliefDistribution& belief,
                         double p) {
    if (params.R - p - params.C / params.mu <= 0.0) {
        return 0.0;  // no surplus even for an empty queue
    }
    const double q_hi = std::min(1.0, (params.mu - 1e-9) / belief.lambda_max());
    auto u = [&](double q) { return u_shared(params, belief, p, q); };
    if (u(q_hi) >= 0.0) {
        return q_hi;  // root at or past the feasible cap; q_hi is 1 unless lambda_max ~ mu
    }
    return num::bisect(u, 0.0, q_hi, kQTol);
}

SharedThresholds shared_saturation_threshold(const SystemParams& params,
                                             const BeliefDistribution& belief) {
    if (belief.lambda_max() >= params.mu) {
        // only an integrable tail survives the cap: density must vanish there
        bool integrable = false;
        if (belief.kind() == BeliefDistribution::Kind::Tabulated) {
            integrable = belief.grid().back().second == 0.0;
        }
        if (!integrable) {
            throw UnstableRegime("E[W(Lambda)] diverges at the support cap");
        }
    }
    const double ew =
        expect(belief, {ExpectationRequest::Transform::Waiting, 1.0}, params);
    if (!std::isfinite(ew)) {
        throw UnstableRegime("E[W(Lambda)] diverges");
    }
    return {rate_of_waiting_time(params, ew)};
}

double mean_private_joining(const SystemParams& params, const BeliefDistribution& belief,
                            double p) {
    const double xi = xi_of_price(params, p);
    return expect(belief, {ExpectationRequest::Transform::ClippedRatio, 1.0, xi}, params);
}

double revenue(const SystemParams& params, const BeliefDistribution& belief,
               InfoCase info, double p) {
    switch (info) {
        case InfoCase::Classical:
            return p * std::min(xi_of_price(params, p), params.lambda);
        case InfoCase::SharedBelief:
            return p * params.lambda * q_shared_of_price(params, belief, p);
        case InfoCase::PrivateBelief:
            return p * params.lambda * mean_private_joining(params, belief, p);
    }
    return 0.0;
}

double welfare(const SystemParams& params, const BeliefDistribution& belief,
               InfoCase info, double p, WelfareVariant variant) {
    const double lam = params.lambda;
    switch (info) {
        case InfoCase::Classical: {
            const double q = q_classical_of_price(params, p);
            return q * lam * (params.R - params.C * waiting_time(params, q * lam));
        }
        case InfoCase::SharedBelief: {
            const double q = q_shared_of_price(params, belief, p);
            return q * lam * (params.R - params.C * waiting_time(params, q * lam));
        }
        case InfoCase::PrivateBelief: {
            const double xi = xi_of_price(params, p);
            if (variant == WelfareVariant::Physical) {
                const double eq = mean_private_joining(params, belief, p);
                return lam * eq * (params.R - params.C * waiting_time(params, eq * lam));
            }
            const std::array<double, 1> kink{xi};
            return belief.expect(
                [&](double l) {
                    const double q = std::min(xi / l, 1.0);
                    return lam * q *
                           (params.R - params.C * waiting_time(params, lam * q));
                },
                kink);
        }
    }
    return 0.0;
}

MetricsRow metrics_row(const SystemParams& params, const BeliefDistribution& belief,
                       double p) {
    MetricsRow row{p,    xi_of_price(params, p), kNan, kNan, kNan, kNan,
                   kNan, kNan,                   kNan, kNan, kNan, kNan,
                   {}};
    auto guard = [&row](const char* field, auto fn) {
        using R = decltype(fn());
        try {
            return fn();
        } catch (const std::exception& e) {
            row.notes.push_back(std::string(field) + ": " + e.what());
            return R(kNan);
        }
    };
    row.q_classical = guard("q_classical",
                            [&] { return q_classical_of_price(params, p); });
    row.q_shared = guard("q_shared",
                         [&] { return q_shared_of_price(params, belief, p); });
    row.q_private_mean = guard("q_private_mean",
                               [&] { return mean_private_joining(params, belief, p); });
    row.rev_classical =
        guard("rev_classical", [&] { return revenue(params, belief, InfoCase::Classical, p); });
    row.rev_shared =
        guard("rev_shared", [&] { return revenue(params, belief, InfoCase::SharedBelief, p); });
    row.rev_private =
        guard("rev_private", [&] { return revenue(params, belief, InfoCase::PrivateBelief, p); });
    row.sw_classical =
        guard("sw_classical", [&] { return welfare(params, belief, InfoCase::Classical, p); });
    row.sw_shared =
        guard("sw_shared", [&] { return welfare(params, belief, InfoCase::SharedBelief, p); });
    row.sw_private_paper = guard("sw_private_paper", [&] {
        return welfare(params, belief, InfoCase::PrivateBelief, p, WelfareVariant::Paper);
    });
    row.sw_private_physical = guard("sw_private_physical", [&] {
        return welfare(params, belief, InfoCase::PrivateBelief, p, WelfareVariant::Physical);
    });
    return row;
}

}  // namespace beliefq::analytics
