#pragma once

#include <optional>
#include <string>
#include <vector>

#include "beliefq/analytics.hpp"
#include "beliefq/model.hpp"

namespace beliefq::equilibrium {

/// Whose objective picks the joining probability.
enum class Regime { Individual, RevenueMax, SocialOpt };

/// Private-belief joining rule: a customer with belief lambda_tilde joins
/// with probability min(xi_star / lambda_tilde, 1).
struct PrivateRule {
    double xi_star;
    double price;         // supporting fee, xi_inverse(xi_star)
    double mean_joining;  // population aggregate E[min(xi_star/Lambda, 1)]
    double value;         // objective value at that fee

    double joining(double lambda_belief) const;
};

/// The nine equilibrium joining probabilities, one information case per set.
/// For PrivateBelief the scalar q slots hold the aggregate mean joining of
/// the solved regime (the rule itself is in private_rule); unsolved slots
/// stay NaN.
struct EquilibriumSet {
    InfoCase info;
    double q_e, q_m, q_s;
    double p_e, p_m, p_s;
    std::optional<PrivateRule> private_rule;
};

EquilibriumSet solve_classical(const SystemParams& params);

EquilibriumSet solve_shared(const SystemParams& params, const BeliefDistribution& belief);

EquilibriumSet solve_private(
    const SystemParams& params, const BeliefDistribution& belief, Regime regime,
    analytics::WelfareVariant so_variant = analytics::WelfareVariant::Physical);

struct OrderingCheck {
    std::string label;
    bool hypothesis_holds;  // the proposition's precondition, tested numerically
    bool observed;          // the ordering itself, as computed
    bool asserted;          // claimed only when the hypothesis holds
};

struct OrderingReport {
    EquilibriumSet classical;
    EquilibriumSet shared;
    std::vector<OrderingCheck> checks;

    bool all_asserted_hold() const;
};

/// Evaluates each proposition's hypothesis (unbiasedness of E[W], E[W^2])
/// to 1e-8 and reports which orderings are asserted versus merely observed.
/// Exponential service only; throws NotMM1 otherwise.
OrderingReport check_orderings(const SystemParams& params,
                               const BeliefDistribution& belief);

/// Chain like "q_m^S < q_m^C = q_s^C = q_s^S < q_e^S < q_e^C = 1", built from
/// the solved values with a 1e-8 equality band.
std::string ordering_string(const EquilibriumSet& classical, const EquilibriumSet& shared);

}  // namespace beliefq::equilibrium
