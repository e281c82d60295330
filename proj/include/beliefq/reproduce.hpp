#pragma once

#include <array>
#include <string>
#include <vector>

#include "beliefq/analytics.hpp"
#include "beliefq/decision.hpp"
#include "beliefq/equilibrium.hpp"

namespace beliefq::reproduce {

/// Datasets behind the published numerical experiments; parameters are
/// hard-coded per target so the outputs are pure functions of the binary.

struct MeanSweepRow {
    std::string belief;
    double harmonic_mean;  // 1/E[1/Lambda]
    double mean;           // E[Lambda]
    double m_at_xi;        // M at the fixed fee's threshold rate
    double rev_private;
    double rev_shared;
    double rev_classical;
};

/// Eleven width-0.6 uniform beliefs shifted right in 0.1 steps, fee 1.5,
/// R = C = mu = 5, lambda = 4.2.
std::vector<MeanSweepRow> table_mean();

struct SpreadRow {
    std::string level;  // unbiased | optimistic | pessimistic
    std::string belief;
    double mean;
    double rev_private;
    double rev_shared;
    double rev_classical;
};

/// Three mean levels (4.2, 3.8, 4.6), half-widths 0 to 0.4, fee 1.5.
std::vector<SpreadRow> table_spread();

struct PSweepRow {
    double p;
    double xi;
    double rev_private;
    double rev_shared;
    double rev_classical;
};

/// Fee grid 0.1 to 3.7 in 0.4 steps; optimistic belief U(3.6, 4.0) or
/// pessimistic U(4.4, 4.8).
std::vector<PSweepRow> table_p(bool optimistic);

struct EquilibriaFig {
    // columns: q, mu E[W^2(q Lambda)], mu W^2(q lambda), E[W(q Lambda)], W(q lambda)
    std::vector<std::array<double, 5>> curve;
    double benefit_cost_ratio;  // the R/C level the curves cross
    equilibrium::EquilibriumSet classical;
    equilibrium::EquilibriumSet shared;
    std::string ordering;
};

/// Two-point belief {2.2: .5, 3.8: .5} with R = 5, C = 4, mu = 4, lambda = 3.
EquilibriaFig fig_equilibria();

/// Region map for the revenue-comparison figure on the U(3.6, 4.0) setting.
decision::RegionGrid fig_regions();

}  // namespace beliefq::reproduce
