#pragma once

#include <optional>
#include <string>
#include <vector>

#include "beliefq/analytics.hpp"
#include "beliefq/model.hpp"

namespace beliefq::decision {

/// M(xi): the true-rate level at which Rev^P and Rev^C swap order at
/// threshold rate xi. Flat at 1/E[1/Lambda] below the support, anchored at
/// lambda_max on the right. Throws OutOfSupport for xi outside [0, lambda_max].
double threshold_m(const BeliefDistribution& belief, double xi);

/// Value-semantic evaluator for M with the two anchors cached.
class ThresholdCurve {
public:
    explicit ThresholdCurve(BeliefDistribution belief);

    double operator()(double xi) const { return threshold_m(belief_, xi); }
    double anchor_min() const { return anchor_min_; }  // M(lambda_min) = 1/E[1/Lambda]
    double anchor_max() const { return anchor_max_; }  // M(lambda_max) = lambda_max
    const BeliefDistribution& belief() const { return belief_; }

private:
    BeliefDistribution belief_;
    double anchor_min_;
    double anchor_max_;
};

enum class Cmp { Less, Equal, Greater, Indeterminate };

const char* to_string(Cmp c);

struct PairLabel {
    Cmp cmp = Cmp::Indeterminate;
    bool asserted = false;  // backed by a theorem hypothesis, not just evaluation
};

/// Revenue dominance labels at one (xi, lambda) cell.
struct RegionClass {
    double xi;
    double lambda;
    PairLabel private_vs_classical;
    PairLabel shared_vs_classical;
    PairLabel private_vs_shared;
};

RegionClass classify_region(const SystemParams& params, const BeliefDistribution& belief,
                            double p);

struct XiCrossing {
    enum class Status { Found, NoCrossing, DegenerateEqual };
    Status status = Status::NoCrossing;
    double xi0 = 0.0;  // meaningful when Found (DegenerateEqual: the point mass)
};

/// Crossover threshold below which Rev^P exceeds Rev^S. Bisection on
/// [lambda_min, lambda_bar_S]; reports NoCrossing instead of guessing when
/// the gap keeps one sign on the bracket.
XiCrossing find_xi0(const SystemParams& params, const BeliefDistribution& belief);

enum class Objective { Revenue, WelfarePaper, WelfarePhysical };

struct PriceOptimum {
    double price;
    double value;
};

/// Maximizes the objective over p in [0, R - C/mu]. Classical revenue under
/// exponential service uses the closed-form maximizer; everything else runs
/// a 64-seed guarded golden-section search (throws NonUnimodal on genuinely
/// bimodal objectives).
PriceOptimum optimize_price(const SystemParams& params, const BeliefDistribution& belief,
                            InfoCase info, Objective objective);

struct RevenueOptComparison {
    Cmp private_vs_classical = Cmp::Indeterminate;
    bool pvc_asserted = false;
    std::string pvc_rule;
    Cmp shared_vs_classical = Cmp::Indeterminate;
    bool svc_asserted = false;
    std::string svc_rule;
    PriceOptimum classical, shared, priv;
    double harmonic_mean;  // 1/E[1/Lambda]
    double m_at_xi_c;      // M at the classical revenue-optimal threshold rate
};

/// Optimal-revenue decision tree (exponential service only; throws NotMM1).
RevenueOptComparison compare_optimal_revenue(const SystemParams& params,
                                             const BeliefDistribution& belief);

struct WelfareOptComparison {
    bool condition_i = false;   // xi(0) >= lambda_bar_S
    bool condition_ii = false;  // lambda_max <= (1 + eps) lambda
    bool asserted = false;      // either condition: SW^P <= SW^C = SW^S
    double epsilon;
    PriceOptimum classical, shared, priv_paper, priv_physical;
};

/// Optimal-welfare comparison (exponential service only; throws NotMM1).
WelfareOptComparison compare_optimal_welfare(const SystemParams& params,
                                             const BeliefDistribution& belief);

enum class Audience { RevenueMaximizer, SocialOptimizer };
enum class BeliefRegime { Pessimistic, Neutral, Optimistic };
enum class Action { RevealTrueRate, RevealBeliefDistribution, Conceal, ComputeCaseByCase };

const char* to_string(Audience a);
const char* to_string(BeliefRegime r);
const char* to_string(Action a);

struct Advice {
    Audience audience;
    BeliefRegime regime;
    Action action;
    std::string rationale;
    double lambda;
    double harmonic_mean;  // 1/E[1/Lambda]
    double mean_belief;    // E[Lambda]
    double m_at_xi_c;
    double epsilon;
    double recommended_price;
    double expected_value;
};

/// Disclosure recommendation for a revenue maximizer or social optimizer;
/// regime determined by lambda against 1/E[1/Lambda] and E[Lambda].
Advice advise(const SystemParams& params, const BeliefDistribution& belief,
              Audience audience);

struct RegionGrid {
    std::vector<double> xis;
    std::vector<double> lambdas;
    std::vector<RegionClass> cells;  // row-major: cells[il * xis.size() + ix]
    std::vector<std::pair<double, double>> m_curve;    // (xi, M(xi))
    std::optional<double> xi0;                         // vertical switch line
    std::vector<std::pair<double, double>> svc_curve;  // (xi_switch, lambda)
};

/// Region map behind the revenue-comparison figure: labels on the grid plus
/// the three switch curves, with p = xi_inverse(xi) at every cell.
RegionGrid figure1_map(const SystemParams& params, const BeliefDistribution& belief,
                       double xi_lo, double xi_hi, double lambda_lo, double lambda_hi,
                       int xi_steps, int lambda_steps);

}  // namespace beliefq::decision
