#include "beliefq/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "beliefq/decision.hpp"
#include "beliefq/numerics.hpp"

namespace beliefq::equilibrium {

namespace {

constexpr double kQTol = 1e-12;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

/// d Rev^S / dq up to the positive factor lambda. Exponential service has the
/// compact form R - C mu E[W^2(q Lambda)]; the general M/G/1 derivative comes
/// from differentiating under the expectation.
double rev_shared_slope(const SystemParams& params, const BeliefDistribution& belief,
                        double q) {
    if (params.is_mm1()) {
        const double ew2 = expect(
            belief, {ExpectationRequest::Transform::WaitingSquared, q}, params);
        return params.R - params.C * params.mu * ew2;
    }
    return params.R -
           params.C * belief.expect([&](double l) {
               const double x = q * l;
               return detail::pk_wait(params.mu, params.s2, x) +
                      x * analytics::waiting_time_slope(params, x);
           });
}

/// Critical point of the concave Rev^S(q), clamped to [0, 1].
double q_revenue_max_shared(const SystemParams& params, const BeliefDistribution& belief) {
    const double q_hi = std::min(1.0, (params.mu - 1e-9) / belief.lambda_max());
    auto slope = [&](double q) { return rev_shared_slope(params, belief, q); };
    if (slope(0.0) <= 0.0) {
        return 0.0;  // R mu = C boundary: joining never pays
    }
    if (slope(q_hi) >= 0.0) {
        return q_hi;
    }
    return std::min(num::bisect(slope, 0.0, q_hi, kQTol), 1.0);
}

}  // namespace

double PrivateRule::joining(double lambda_belief) const {
    return std::min(xi_star / lambda_belief, 1.0);
}

EquilibriumSet solve_classical(const SystemParams& params) {
    EquilibriumSet set{InfoCase::Classical, kNan, kNan, kNan, 0.0, kNan, kNan, {}};
    set.q_e = std::min(analytics::xi_of_price(params, 0.0) / params.lambda, 1.0);

    double q_star;
    if (params.is_mm1()) {
        const double xi_star = params.mu - std::sqrt(params.C * params.mu / params.R);
        q_star = std::min(xi_star / params.lambda, 1.0);
    } else {
        auto objective = [&](double q) {
            return q * params.lambda *
                   (params.R - params.C * analytics::waiting_time(params, q * params.lambda));
        };
        q_star = num::golden_max(objective, 0.0, 1.0, 1e-10).x;
    }
    set.q_m = set.q_s = q_star;
    const double fee =
        params.R - params.C * analytics::waiting_time(params, q_star * params.lambda);
    set.p_m = set.p_s = fee;
    return set;
}

EquilibriumSet solve_shared(const SystemParams& params, const BeliefDistribution& belief) {
    EquilibriumSet set{InfoCase::SharedBelief, kNan, kNan, kNan, 0.0, kNan, kNan, {}};
    set.q_e = analytics::q_shared_of_price(params, belief, 0.0);
    set.q_m = q_revenue_max_shared(params, belief);
    set.q_s = solve_classical(params).q_s;  // transfer payment: belief-independent

    auto supporting_fee = [&](double q) {
        return params.R -
               params.C *
                   expect(belief, {ExpectationRequest::Transform::Waiting, q}, params);
    };
    set.p_m = supporting_fee(set.q_m);
    set.p_s = supporting_fee(set.q_s);
    return set;
}

EquilibriumSet solve_private(const SystemParams& params, const BeliefDistribution& belief,
                             Regime regime, analytics::WelfareVariant so_variant) {
    EquilibriumSet set{InfoCase::PrivateBelief, kNan, kNan, kNan, kNan, kNan, kNan, {}};
    PrivateRule rule{};
    switch (regime) {
        case Regime::Individual: {
            rule.price = 0.0;
            rule.xi_star = analytics::xi_of_price(params, 0.0);
            rule.mean_joining = analytics::mean_private_joining(params, belief, 0.0);
            rule.value = 0.0;  // no fee collected
            set.q_e = rule.mean_joining;
            set.p_e = 0.0;
            break;
        }
        case Regime::RevenueMax: {
            const decision::PriceOptimum best = decision::optimize_price(
                params, belief, InfoCase::PrivateBelief, decision::Objective::Revenue);
            rule.price = best.price;
            rule.value = best.value;
            rule.xi_star = analytics::xi_of_price(params, best.price);
            rule.mean_joining = analytics::mean_private_joining(params, belief, best.price);
            set.q_m = rule.mean_joining;
            set.p_m = best.price;
            break;
        }
        case Regime::SocialOpt: {
            const auto objective = so_variant == analytics::WelfareVariant::Paper
                                       ? decision::Objective::WelfarePaper
                                       : decision::Objective::WelfarePhysical;
            const decision::PriceOptimum best = decision::optimize_price(
                params, belief, InfoCase::PrivateBelief, objective);
            rule.price = best.price;
            rule.value = best.value;
            rule.xi_star = analytics::xi_of_price(params, best.price);
            rule.mean_joining = analytics::mean_private_joining(params, belief, best.price);
            set.q_s = rule.mean_joining;
            set.p_s = best.price;
            break;
        }
    }
    set.private_rule = rule;
    return set;
}

bool OrderingReport::all_asserted_hold() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const OrderingCheck& c) { return !c.asserted || c.observed; });
}

OrderingReport check_orderings(const SystemParams& params,
                               const BeliefDistribution& belief) {
    if (!params.is_mm1()) {
        throw NotMM1("ordering propositions are stated for exponential service");
    }
    OrderingReport report{solve_classical(params), solve_shared(params, belief), {}};
    const EquilibriumSet& cl = report.classical;
    const EquilibriumSet& sh = report.shared;
    constexpr double kHypTol = 1e-8;
    constexpr double kOrdTol = 1e-10;

    auto unbiased_w = [&](double q) {
        const double ew =
            expect(belief, {ExpectationRequest::Transform::Waiting, q}, params);
        const double w = analytics::waiting_time(params, q * params.lambda);
        return std::abs(ew - w) <= kHypTol * std::max(std::abs(w), 1.0);
    };
    auto unbiased_w2 = [&](double q) {
        const double ew2 =
            expect(belief, {ExpectationRequest::Transform::WaitingSquared, q}, params);
        const double w = analytics::waiting_time(params, q * params.lambda);
        return std::abs(ew2 - w * w) <= kHypTol * std::max(w * w, 1.0);
    };

    auto add = [&](std::string label, bool hyp, bool obs) {
        report.checks.push_back({std::move(label), hyp, obs, hyp});
    };

    add("q_m^S <= q_e^S (any belief)", true, sh.q_m <= sh.q_e + kOrdTol);
    add("p_s^S >= 0 => q_s^S <= q_e^S", sh.p_s >= 0.0, sh.q_s <= sh.q_e + kOrdTol);
    add("E[W^2] unbiased at q_s => q_m^S = q_s^S", unbiased_w2(sh.q_s),
        std::abs(sh.q_m - sh.q_s) <= kHypTol);
    add("E[W] unbiased at q_s => q_m^S <= q_s^S", unbiased_w(sh.q_s),
        sh.q_m <= sh.q_s + kOrdTol);
    add("E[W] unbiased at q_e => q_e^S = q_e^C", unbiased_w(sh.q_e),
        std::abs(sh.q_e - cl.q_e) <= kHypTol);
    add("E[W] unbiased at q_s => q_m^S <= q_s^S <= q_e^S", unbiased_w(sh.q_s),
        sh.q_m <= sh.q_s + kOrdTol && sh.q_s <= sh.q_e + kOrdTol);
    return report;
}

std::string ordering_string(const EquilibriumSet& classical, const EquilibriumSet& shared) {
    struct Entry {
        const char* label;
        double value;
        int priority;
    };
    std::vector<Entry> entries{
        {"q_m^S", shared.q_m, 0},    {"q_m^C", classical.q_m, 1},
        {"q_s^C", classical.q_s, 2}, {"q_s^S", shared.q_s, 3},
        {"q_e^S", shared.q_e, 4},    {"q_e^C", classical.q_e, 5},
    };
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.value != b.value) return a.value < b.value;
        return a.priority < b.priority;
    });
    std::ostringstream out;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i > 0) {
            out << (std::abs(entries[i].value - entries[i - 1].value) <= 1e-8 ? " = "
                                                                              : " < ");
        }
        out << entries[i].label;
    }
    if (std::abs(entries.back().value - 1.0) <= 1e-8) {
        out << " = 1";
    }
    return out.str();
}

}  // namespace beliefq::equilibrium
