#pragma once

#include <string>

#include <json.hpp>

#include "beliefq/analytics.hpp"
#include "beliefq/decision.hpp"
#include "beliefq/equilibrium.hpp"
#include "beliefq/model.hpp"
#include "beliefq/sim.hpp"

namespace beliefq::io {

/// {"R":..,"C":..,"mu":..,"s2":..,"lambda":..}; omitting "s2" selects
/// exponential service (2/mu^2).
SystemParams params_from_json(const nlohmann::json& j);
SystemParams load_params(const std::string& path);
nlohmann::json to_json(const SystemParams& params);

/// {"type":"discrete","points":[[l,w],..]} | {"type":"uniform","a":..,"b":..}
/// | {"type":"tabulated","grid":[[l,f],..]}
BeliefDistribution belief_from_json(const nlohmann::json& j);
BeliefDistribution load_belief(const std::string& path);
nlohmann::json to_json(const BeliefDistribution& belief);

nlohmann::json to_json(const analytics::MetricsRow& row);
nlohmann::json to_json(const sim::SimReport& report);
nlohmann::json to_json(const sim::ValidationSummary& summary);
nlohmann::json to_json(const equilibrium::EquilibriumSet& set);
nlohmann::json to_json(const equilibrium::OrderingReport& report);
nlohmann::json to_json(const decision::Advice& advice);
nlohmann::json to_json(const decision::RegionClass& rc);

/// Round half-to-even at the given decimal count.
double round_half_even(double x, int digits);

/// Fixed-point text of the half-even-rounded value ("nan" for NaN).
std::string format_fixed(double x, int digits);

const char* metrics_csv_header();
std::string metrics_csv_row(const analytics::MetricsRow& row, int digits);

}  // namespace beliefq::io
