#include "beliefq/reproduce.hpp"

#include <cmath>
#include <sstream>

namespace beliefq::reproduce {

namespace {

constexpr double kFee = 1.5;

SystemParams illustration2_params() {
    return SystemParams::make(5.0, 5.0, 5.0, 2.0 / 25.0, 4.2);
}

std::string uniform_label(double a, double b) {
    std::ostringstream out;
    out << "U(" << a << "," << b << ")";
    return out.str();
}

}  // namespace

std::vector<MeanSweepRow> table_mean() {
    const SystemParams params = illustration2_params();
    const double xi = analytics::xi_of_price(params, kFee);
    std::vector<MeanSweepRow> rows;
    for (int k = 0; k <= 10; ++k) {
        const double a = 3.4 + 0.1 * k;
        const double b = 4.0 + 0.1 * k;
        const BeliefDistribution belief = BeliefDistribution::uniform(a, b);
        rows.push_back({uniform_label(a, b),
                        1.0 / belief.inv_mean(),
                        belief.mean(),
                        decision::threshold_m(belief, std::min(xi, belief.lambda_max())),
                        analytics::revenue(params, belief, InfoCase::PrivateBelief, kFee),
                        analytics::revenue(params, belief, InfoCase::SharedBelief, kFee),
                        analytics::revenue(params, belief, InfoCase::Classical, kFee)});
    }
    return rows;
}

std::vector<SpreadRow> table_spread() {
    const SystemParams params = illustration2_params();
    struct Level {
        const char* name;
        double mean;
    };
    const Level levels[] = {{"unbiased", 4.2}, {"optimistic", 3.8}, {"pessimistic", 4.6}};
    std::vector<SpreadRow> rows;
    for (const Level& level : levels) {
        for (int w10 = 0; w10 <= 4; ++w10) {
            const double w = 0.1 * w10;
            BeliefDistribution belief =
                w == 0.0 ? BeliefDistribution::point_mass(level.mean)
                         : BeliefDistribution::uniform(level.mean - w, level.mean + w);
            std::ostringstream label;
            if (w == 0.0) {
                label << level.mean;
            } else {
                label << "U(" << level.mean - w << "," << level.mean + w << ")";
            }
            rows.push_back({level.name, label.str(), belief.mean(),
                            analytics::revenue(params, belief, InfoCase::PrivateBelief, kFee),
                            analytics::revenue(params, belief, InfoCase::SharedBelief, kFee),
                            analytics::revenue(params, belief, InfoCase::Classical, kFee)});
        }
    }
    return rows;
}

std::vector<PSweepRow> table_p(bool optimistic) {
    const SystemParams params = illustration2_params();
    const BeliefDistribution belief = optimistic ? BeliefDistribution::uniform(3.6, 4.0)
                                                 : BeliefDistribution::uniform(4.4, 4.8);
    std::vector<PSweepRow> rows;
    for (int k = 0; k < 10; ++k) {
        const double p = 0.1 + 0.4 * k;
        rows.push_back({p, analytics::xi_of_price(params, p),
                        analytics::revenue(params, belief, InfoCase::PrivateBelief, p),
                        analytics::revenue(params, belief, InfoCase::SharedBelief, p),
                        analytics::revenue(params, belief, InfoCase::Classical, p)});
    }
    return rows;
}

EquilibriaFig fig_equilibria() {
    const SystemParams params = SystemParams::make(5.0, 4.0, 4.0, 2.0 / 16.0, 3.0);
    const BeliefDistribution belief =
        BeliefDistribution::discrete({{2.2, 0.5}, {3.8, 0.5}});

    EquilibriaFig fig;
    fig.benefit_cost_ratio = params.R / params.C;
    fig.classical = equilibrium::solve_classical(params);
    fig.shared = equilibrium::solve_shared(params, belief);
    fig.ordering = equilibrium::ordering_string(fig.classical, fig.shared);

    const int n = 100;
    for (int i = 0; i <= n; ++i) {
        const double q = static_cast<double>(i) / n;
        const double w_classical = analytics::waiting_time(params, q * params.lambda);
        const double ew = expect(
            belief, {ExpectationRequest::Transform::Waiting, q}, params);
        const double ew2 = expect(
            belief, {ExpectationRequest::Transform::WaitingSquared, q}, params);
        // all four cross the R/C level at the respective equilibria
        fig.curve.push_back(
            {q, params.mu * ew2, params.mu * w_classical * w_classical, ew, w_classical});
    }
    return fig;
}

decision::RegionGrid fig_regions() {
    const SystemParams params = illustration2_params();
    const BeliefDistribution belief = BeliefDistribution::uniform(3.6, 4.0);
    return decision::figure1_map(params, belief, 0.1, 3.99, 3.0, 4.95, 40, 40);
}

}  // namespace beliefq::reproduce
