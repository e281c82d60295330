#include "beliefq/decision.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "beliefq/numerics.hpp"

namespace beliefq::decision {

namespace {

constexpr double kSignBand = 1e-9;

Cmp compare_with_band(double a, double b, double band = kSignBand) {
    const double scale = std::max({std::abs(a), std::abs(b), 1.0});
    if (std::abs(a - b) <= band * scale) return Cmp::Equal;
    return a > b ? Cmp::Greater : Cmp::Less;
}

void require_mm1(const SystemParams& params, const char* op) {
    if (!params.is_mm1()) {
        throw NotMM1(std::string(op) + " requires exponential service (s2 = 2/mu^2)");
    }
}

double classical_opt_xi(const SystemParams& params) {
    return std::min(params.mu - std::sqrt(params.C * params.mu / params.R), params.lambda);
}

}  // namespace

const char* to_string(Cmp c) {
    switch (c) {
        case Cmp::Less: return "<";
        case Cmp::Equal: return "=";
        case Cmp::Greater: return ">";
        case Cmp::Indeterminate: return "?";
    }
    return "?";
}

const char* to_string(Audience a) {
    return a == Audience::RevenueMaximizer ? "rm" : "so";
}

const char* to_string(BeliefRegime r) {
    switch (r) {
        case BeliefRegime::Pessimistic: return "pessimistic";
        case BeliefRegime::Neutral: return "neutral";
        case BeliefRegime::Optimistic: return "optimistic";
    }
    return "?";
}

const char* to_string(Action a) {
    switch (a) {
        case Action::RevealTrueRate: return "reveal_true_rate";
        case Action::RevealBeliefDistribution: return "reveal_belief_distribution";
        case Action::Conceal: return "conceal";
        case Action::ComputeCaseByCase: return "compute_case_by_case";
    }
    return "?";
}

double threshold_m(const BeliefDistribution& belief, double xi) {
    const double hi = belief.lambda_max();
    if (xi < 0.0 || xi > hi * (1.0 + 1e-12)) {
        throw OutOfSupport("threshold rate outside [0, lambda_max]");
    }
    if (xi <= belief.lambda_min()) {
        return 1.0 / belief.inv_mean();
    }
    if (xi >= hi) {
        return hi;
    }
    const double a = belief.cdf(xi) / xi +
                     belief.partial_expect([](double l) { return 1.0 / l; }, xi, hi);
    return 1.0 / a;
}

ThresholdCurve::ThresholdCurve(BeliefDistribution belief)
    : belief_(std::move(belief)),
      anchor_min_(1.0 / belief_.inv_mean()),
      anchor_max_(belief_.lambda_max()) {}

XiCrossing find_xi0(const SystemParams& params, const BeliefDistribution& belief) {
    if (belief.is_point_mass()) {
        return {XiCrossing::Status::DegenerateEqual, belief.lambda_min()};
    }
    const double lambda_bar =
        analytics::shared_saturation_threshold(params, belief).lambda_bar_s;
    const double lo = belief.lambda_min();
    const double hi = std::min(lambda_bar, belief.lambda_max() * (1.0 - 1e-12));
    auto gap = [&](double xi) {
        const double p = analytics::xi_inverse(params, xi);
        return analytics::mean_private_joining(params, belief, p) -
               analytics::q_shared_of_price(params, belief, p);
    };
    const double g_lo = gap(lo);
    const double g_hi = gap(hi);
    if (std::abs(g_lo) <= 1e-14) return {XiCrossing::Status::Found, lo};
    if (std::abs(g_hi) <= 1e-14) return {XiCrossing::Status::Found, hi};
    if ((g_lo > 0.0) == (g_hi > 0.0)) {
        return {XiCrossing::Status::NoCrossing, 0.0};
    }
    return {XiCrossing::Status::Found, num::bisect(gap, lo, hi, 1e-10)};
}

namespace {

struct RegionContext {
    std::optional<double> lambda_bar;  // absent when E[W(Lambda)] diverges
    XiCrossing cross;
};

RegionContext make_region_context(const SystemParams& params,
                                  const BeliefDistribution& belief) {
    RegionContext ctx;
    try {
        ctx.lambda_bar =
            analytics::shared_saturation_threshold(params, belief).lambda_bar_s;
        ctx.cross = find_xi0(params, belief);
    } catch (const UnstableRegime&) {
        ctx.cross = {XiCrossing::Status::NoCrossing, 0.0};
    }
    return ctx;
}

RegionClass classify_with_context(const SystemParams& params,
                                  const BeliefDistribution& belief, double p,
                                  const RegionContext& ctx) {
    const double xi = analytics::xi_of_price(params, p);
    const double lam = params.lambda;
    RegionClass rc{xi, lam, {}, {}, {}};

    // private vs classical: Theorem-backed sign of lambda - M(xi)
    if (xi >= belief.lambda_max()) {
        rc.private_vs_classical = {Cmp::Equal, true};
    } else {
        const double m = threshold_m(belief, xi);
        rc.private_vs_classical = {compare_with_band(lam, m), true};
    }

    // shared vs classical: sufficient conditions when they apply, else computed
    {
        const double rev_s = analytics::revenue(params, belief, InfoCase::SharedBelief, p);
        const double rev_c = analytics::revenue(params, belief, InfoCase::Classical, p);
        const Cmp computed = compare_with_band(rev_s, rev_c);
        bool covered = false;
        if (lam <= belief.mean()) {
            covered = true;  // Rev^S <= Rev^C
        } else if (ctx.lambda_bar) {
            if (lam <= *ctx.lambda_bar) {
                covered = xi >= lam;              // Rev^S <= Rev^C
            } else {
                covered = xi >= *ctx.lambda_bar;  // Rev^S >= Rev^C
            }
        }
        rc.shared_vs_classical = {computed, covered};
    }

    // private vs shared: position of xi against the crossover
    if (xi >= belief.lambda_max()) {
        rc.private_vs_shared = {Cmp::Equal, true};
    } else if (ctx.cross.status == XiCrossing::Status::Found) {
        // xi below the crossover: the private case collects more
        rc.private_vs_shared = {compare_with_band(ctx.cross.xi0, xi), true};
    } else if (ctx.cross.status == XiCrossing::Status::DegenerateEqual) {
        rc.private_vs_shared = {Cmp::Equal, false};
    } else {
        const double rev_p = analytics::revenue(params, belief, InfoCase::PrivateBelief, p);
        const double rev_s = analytics::revenue(params, belief, InfoCase::SharedBelief, p);
        rc.private_vs_shared = {compare_with_band(rev_p, rev_s), false};
    }
    return rc;
}

}  // namespace

RegionClass classify_region(const SystemParams& params, const BeliefDistribution& belief,
                            double p) {
    return classify_with_context(params, belief, p, make_region_context(params, belief));
}

PriceOptimum optimize_price(const SystemParams& params, const BeliefDistribution& belief,
                            InfoCase info, Objective objective) {
    const double p_max = params.R - params.C / params.mu;
    if (info == InfoCase::Classical && objective == Objective::Revenue && params.is_mm1()) {
        const double xi_star = classical_opt_xi(params);
        const double p_star = analytics::xi_inverse(params, xi_star);
        return {p_star, analytics::revenue(params, belief, info, p_star)};
    }
    auto objective_at = [&](double p) {
        switch (objective) {
            case Objective::Revenue:
                return analytics::revenue(params, belief, info, p);
            case Objective::WelfarePaper:
                return analytics::welfare(params, belief, info, p,
                                          analytics::WelfareVariant::Paper);
            case Objective::WelfarePhysical:
                return analytics::welfare(params, belief, info, p,
                                          analytics::WelfareVariant::Physical);
        }
        return 0.0;
    };
    const num::Maximum best = num::guarded_max(objective_at, 0.0, p_max, 64, 1e-9);
    return {best.x, best.value};
}

RevenueOptComparison compare_optimal_revenue(const SystemParams& params,
                                             const BeliefDistribution& belief) {
    require_mm1(params, "compare_optimal_revenue");
    RevenueOptComparison out;
    out.harmonic_mean = 1.0 / belief.inv_mean();
    const double xi_c = classical_opt_xi(params);
    out.m_at_xi_c = threshold_m(belief, std::min(xi_c, belief.lambda_max()));

    out.classical = optimize_price(params, belief, InfoCase::Classical, Objective::Revenue);
    out.shared = optimize_price(params, belief, InfoCase::SharedBelief, Objective::Revenue);
    out.priv = optimize_price(params, belief, InfoCase::PrivateBelief, Objective::Revenue);

    const double lam = params.lambda;
    if (lam <= out.harmonic_mean) {
        // lambda <= M(xi) everywhere, so the private case never collects more
        out.private_vs_classical = Cmp::Less;
        out.pvc_asserted = true;
        out.pvc_rule = "lambda <= 1/E[1/Lambda]: Rev^P_opt <= Rev^C_opt";
    } else if (lam >= out.m_at_xi_c) {
        // pointwise dominance at the classical-optimal fee itself
        out.private_vs_classical = Cmp::Greater;
        out.pvc_asserted = true;
        out.pvc_rule = "lambda >= M(xi^C): Rev^C_opt <= Rev^P_opt";
    } else {
        // intermediate band: d Rev^P/d xi at xi^C equals -lambda R F(xi^C)/mu,
        // so the private optimum can sit below xi^C where lambda > M holds and
        // no pointwise argument pins the order; report the computed sign
        out.private_vs_classical = compare_with_band(out.priv.value, out.classical.value);
        out.pvc_asserted = false;
        out.pvc_rule =
            "1/E[1/Lambda] < lambda < M(xi^C): no sound sufficient condition, "
            "computed optima decide";
    }

    if (lam <= belief.mean()) {
        out.shared_vs_classical = Cmp::Less;
        out.svc_asserted = true;
        out.svc_rule = "lambda <= E[Lambda]: Rev^S_opt <= Rev^C_opt";
    } else {
        out.shared_vs_classical = compare_with_band(out.shared.value, out.classical.value);
        out.svc_asserted = false;
        out.svc_rule = "computed optima only";
    }
    return out;
}

WelfareOptComparison compare_optimal_welfare(const SystemParams& params,
                                             const BeliefDistribution& belief) {
    require_mm1(params, "compare_optimal_welfare");
    WelfareOptComparison out;
    out.epsilon = std::sqrt(params.C / (params.R * params.mu));
    const double xi0 = analytics::xi_of_price(params, 0.0);
    double lambda_bar;
    try {
        lambda_bar = analytics::shared_saturation_threshold(params, belief).lambda_bar_s;
        out.condition_i = xi0 >= lambda_bar;
    } catch (const UnstableRegime&) {
        out.condition_i = false;
    }
    out.condition_ii = belief.lambda_max() <= (1.0 + out.epsilon) * params.lambda;
    out.asserted = out.condition_i || out.condition_ii;

    out.classical =
        optimize_price(params, belief, InfoCase::Classical, Objective::WelfarePhysical);
    out.shared =
        optimize_price(params, belief, InfoCase::SharedBelief, Objective::WelfarePhysical);
    out.priv_paper =
        optimize_price(params, belief, InfoCase::PrivateBelief, Objective::WelfarePaper);
    out.priv_physical =
        optimize_price(params, belief, InfoCase::PrivateBelief, Objective::WelfarePhysical);
    return out;
}

Advice advise(const SystemParams& params, const BeliefDistribution& belief,
              Audience audience) {
    Advice adv{};
    adv.audience = audience;
    adv.lambda = params.lambda;
    adv.harmonic_mean = 1.0 / belief.inv_mean();
    adv.mean_belief = belief.mean();
    adv.epsilon = std::sqrt(params.C / (params.R * params.mu));
    const double xi_c = classical_opt_xi(params);
    adv.m_at_xi_c = threshold_m(belief, std::min(xi_c, belief.lambda_max()));

    const double lam = params.lambda;
    if (lam <= adv.harmonic_mean) {
        adv.regime = BeliefRegime::Pessimistic;
    } else if (lam <= adv.mean_belief) {
        adv.regime = BeliefRegime::Neutral;
    } else {
        adv.regime = BeliefRegime::Optimistic;
    }
    std::ostringstream why;
    const double tie = 1e-12 * std::max(1.0, lam);
    if (std::abs(lam - adv.harmonic_mean) <= tie || std::abs(lam - adv.mean_belief) <= tie) {
        why << "regime boundary tie; ";
    }
    if (belief.is_point_mass()) {
        why << "degenerate belief: every customer already holds one rate, so "
               "disclosure is informationally equivalent to concealment; ";
    }

    if (audience == Audience::RevenueMaximizer) {
        const PriceOptimum classical =
            optimize_price(params, belief, InfoCase::Classical, Objective::Revenue);
        switch (adv.regime) {
            case BeliefRegime::Pessimistic: {
                adv.action = Action::RevealTrueRate;
                adv.recommended_price = classical.price;
                adv.expected_value = classical.value;
                why << "customers are pessimistic (lambda <= 1/E[1/Lambda] = "
                    << adv.harmonic_mean
                    << "); revealing the true rate encourages participation, then "
                       "optimize the fee";
                break;
            }
            case BeliefRegime::Neutral: {
                if (lam < adv.m_at_xi_c) {
                    adv.action = Action::RevealTrueRate;
                    adv.recommended_price = classical.price;
                    adv.expected_value = classical.value;
                    why << "neutral customers and lambda < M(xi^C) = " << adv.m_at_xi_c
                        << ": the classical optimum dominates";
                } else {
                    const PriceOptimum priv = optimize_price(
                        params, belief, InfoCase::PrivateBelief, Objective::Revenue);
                    adv.action = Action::Conceal;
                    adv.recommended_price = priv.price;
                    adv.expected_value = priv.value;
                    why << "neutral customers and lambda >= M(xi^C) = " << adv.m_at_xi_c
                        << ": keeping beliefs private dominates";
                }
                break;
            }
            case BeliefRegime::Optimistic: {
                const PriceOptimum priv = optimize_price(
                    params, belief, InfoCase::PrivateBelief, Objective::Revenue);
                if (lam >= adv.m_at_xi_c) {
                    adv.action = Action::Conceal;
                    adv.recommended_price = priv.price;
                    adv.expected_value = priv.value;
                    why << "optimistic customers and lambda >= M(xi^C) = " << adv.m_at_xi_c
                        << ": conceal and charge the high revenue-optimal fee";
                } else {
                    adv.action = Action::ComputeCaseByCase;
                    const bool conceal_better = priv.value >= classical.value;
                    adv.recommended_price = conceal_better ? priv.price : classical.price;
                    adv.expected_value = std::max(priv.value, classical.value);
                    why << "optimistic customers but lambda < M(xi^C) = " << adv.m_at_xi_c
                        << "; no clean rule for low-price plans: conceal yields "
                        << priv.value << " at fee " << priv.price << ", revealing yields "
                        << classical.value << " at fee " << classical.price;
                }
                break;
            }
        }
    } else {
        const PriceOptimum classical =
            optimize_price(params, belief, InfoCase::Classical, Objective::WelfarePhysical);
        adv.recommended_price = classical.price;
        adv.expected_value = classical.value;
        bool condition_i = false;
        try {
            condition_i = analytics::xi_of_price(params, 0.0) >=
                          analytics::shared_saturation_threshold(params, belief).lambda_bar_s;
        } catch (const UnstableRegime&) {
            condition_i = false;
        }
        const bool condition_ii =
            belief.lambda_max() <= (1.0 + adv.epsilon) * params.lambda;
        if (adv.regime == BeliefRegime::Optimistic) {
            adv.action = Action::RevealTrueRate;
            why << "optimistic customers: full disclosure is welfare-optimal (the "
                   "shared distribution works equally well)";
        } else if (condition_i || condition_ii) {
            adv.action = Action::RevealTrueRate;
            why << "disclosure is welfare-optimal: "
                << (condition_i ? "all-join threshold already reached at p = 0"
                                : "belief spread bounded, lambda_max <= (1+eps) lambda");
        } else {
            adv.action = Action::ComputeCaseByCase;
            why << "caution: customers are pessimistic with lambda_max > (1+eps) lambda = "
                << (1.0 + adv.epsilon) * params.lambda
                << "; the welfare ordering is not guaranteed, compare the optima directly";
        }
    }
    adv.rationale = why.str();
    return adv;
}

RegionGrid figure1_map(const SystemParams& params, const BeliefDistribution& belief,
                       double xi_lo, double xi_hi, double lambda_lo, double lambda_hi,
                       int xi_steps, int lambda_steps) {
    RegionGrid grid;
    for (int i = 0; i <= xi_steps; ++i) {
        grid.xis.push_back(xi_lo + (xi_hi - xi_lo) * i / std::max(xi_steps, 1));
    }
    for (int j = 0; j <= lambda_steps; ++j) {
        grid.lambdas.push_back(lambda_lo +
                               (lambda_hi - lambda_lo) * j / std::max(lambda_steps, 1));
    }

    const RegionContext ctx = make_region_context(params, belief);
    if (ctx.cross.status == XiCrossing::Status::Found) {
        grid.xi0 = ctx.cross.xi0;
    }

    // M polyline on a finer abscissa grid
    const int m_pts = 4 * std::max(xi_steps, 8);
    for (int i = 0; i <= m_pts; ++i) {
        const double xi =
            std::min(xi_lo + (xi_hi - xi_lo) * i / m_pts, belief.lambda_max());
        grid.m_curve.emplace_back(xi, threshold_m(belief, xi));
        if (xi >= belief.lambda_max()) break;
    }

    grid.cells.resize(grid.lambdas.size() * grid.xis.size());
    num::parallel_for(grid.lambdas.size(), [&](std::size_t j) {
        SystemParams row_params = params;
        row_params.lambda = grid.lambdas[j];
        for (std::size_t i = 0; i < grid.xis.size(); ++i) {
            const double p = analytics::xi_inverse(params, grid.xis[i]);
            grid.cells[j * grid.xis.size() + i] =
                classify_with_context(row_params, belief, p, ctx);
        }
    });

    // shared-vs-classical switch: per-lambda bisection over xi (no closed form)
    for (double lam : grid.lambdas) {
        if (lam >= params.mu) continue;
        SystemParams row_params = params;
        row_params.lambda = lam;
        auto gap = [&](double xi) {
            const double p = analytics::xi_inverse(params, xi);
            return analytics::revenue(row_params, belief, InfoCase::SharedBelief, p) -
                   analytics::revenue(row_params, belief, InfoCase::Classical, p);
        };
        const int scan = 48;
        double prev_x = xi_lo;
        double prev_g = gap(prev_x);
        for (int i = 1; i <= scan; ++i) {
            const double x = xi_lo + (xi_hi - xi_lo) * i / scan;
            const double g = gap(x);
            if ((prev_g > 0.0) != (g > 0.0)) {
                grid.svc_curve.emplace_back(num::bisect(gap, prev_x, x, 1e-8), lam);
                break;
            }
            prev_x = x;
            prev_g = g;
        }
    }
    return grid;
}

}  // namespace beliefq::decision
