#pragma once

// Deterministic instance generators shared by the property suites.

#include <algorithm>
#include <random>
#include <utility>
#include <vector>

#include "beliefq/model.hpp"

namespace testgen {

using beliefq::BeliefDistribution;
using beliefq::SystemParams;

struct Instance {
    SystemParams params;
    BeliefDistribution belief;
};

inline BeliefDistribution random_belief(std::mt19937_64& rng, double mu,
                                        int kind_choice = -1) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int kind = kind_choice >= 0 ? kind_choice : static_cast<int>(unit(rng) * 3.0);
    const double lo_frac = 0.05 + 0.55 * unit(rng);
    const double hi_frac = lo_frac + 0.05 + (0.93 - lo_frac) * unit(rng);
    const double a = lo_frac * mu;
    const double b = hi_frac * mu;
    switch (kind) {
        case 0: {
            const int k = 2 + static_cast<int>(unit(rng) * 4.99);
            std::vector<std::pair<double, double>> atoms;
            double wsum = 0.0;
            for (int i = 0; i < k; ++i) {
                atoms.emplace_back(a + (b - a) * i / (k - 1), 0.1 + unit(rng));
                wsum += atoms.back().second;
            }
            for (auto& [l, w] : atoms) w /= wsum;
            return BeliefDistribution::discrete(std::move(atoms));
        }
        case 1:
            return BeliefDistribution::uniform(a, b);
        default: {
            const int k = 3 + static_cast<int>(unit(rng) * 4.99);
            std::vector<std::pair<double, double>> grid;
            for (int i = 0; i < k; ++i) {
                grid.emplace_back(a + (b - a) * i / (k - 1), 0.2 + unit(rng));
            }
            return BeliefDistribution::tabulated(std::move(grid));
        }
    }
}

inline Instance random_mm1_instance(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double mu = 0.5 + 7.5 * unit(rng);
    const double reward = 0.5 + 9.5 * unit(rng);
    const double cost = reward * mu * (0.05 + 0.85 * unit(rng));
    BeliefDistribution belief = random_belief(rng, mu);
    const double span = belief.lambda_max() - belief.lambda_min();
    const double lambda = std::clamp(belief.lambda_min() + span * unit(rng), 0.02 * mu,
                                     0.98 * mu);
    return {SystemParams::make(reward, cost, mu, 2.0 / (mu * mu), lambda),
            std::move(belief)};
}

}  // namespace testgen
