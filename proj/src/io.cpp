#include "beliefq/io.hpp"

#include <cfenv>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace beliefq::io {

using nlohmann::json;

namespace {

json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path);
    }
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw IoError(path + ": " + e.what());
    }
    return j;
}

double require_number(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number()) {
        throw IoError(std::string("missing numeric field \"") + key + "\"");
    }
    return j.at(key).get<double>();
}

}  // namespace

SystemParams params_from_json(const json& j) {
    const double mu = require_number(j, "mu");
    const double s2 = j.contains("s2") ? require_number(j, "s2") : 2.0 / (mu * mu);
    return SystemParams::make(require_number(j, "R"), require_number(j, "C"), mu, s2,
                              require_number(j, "lambda"));
}

SystemParams load_params(const std::string& path) {
    return params_from_json(load_file(path));
}

json to_json(const SystemParams& p) {
    return json{{"R", p.R}, {"C", p.C}, {"mu", p.mu}, {"s2", p.s2}, {"lambda", p.lambda}};
}

BeliefDistribution belief_from_json(const json& j) {
    const std::string type = j.value("type", "");
    auto pairs = [&](const char* key) {
        if (!j.contains(key) || !j.at(key).is_array()) {
            throw IoError(std::string("belief needs an array field \"") + key + "\"");
        }
        std::vector<std::pair<double, double>> out;
        for (const auto& e : j.at(key)) {
            if (!e.is_array() || e.size() != 2) {
                throw IoError(std::string(key) + " entries must be [x, y] pairs");
            }
            out.emplace_back(e[0].get<double>(), e[1].get<double>());
        }
        return out;
    };
    if (type == "discrete") {
        return BeliefDistribution::discrete(pairs("points"));
    }
    if (type == "uniform") {
        return BeliefDistribution::uniform(require_number(j, "a"), require_number(j, "b"));
    }
    if (type == "tabulated") {
        return BeliefDistribution::tabulated(pairs("grid"));
    }
    throw IoError("belief type must be discrete, uniform, or tabulated");
}

BeliefDistribution load_belief(const std::string& path) {
    return belief_from_json(load_file(path));
}

json to_json(const BeliefDistribution& b) {
    switch (b.kind()) {
        case BeliefDistribution::Kind::Discrete: {
            json points = json::array();
            for (const auto& [l, w] : b.atoms()) points.push_back({l, w});
            return json{{"type", "discrete"}, {"points", points}};
        }
        case BeliefDistribution::Kind::Uniform:
            return json{{"type", "uniform"}, {"a", b.uniform_lo()}, {"b", b.uniform_hi()}};
        case BeliefDistribution::Kind::Tabulated: {
            json grid = json::array();
            for (const auto& [l, f] : b.grid()) grid.push_back({l, f});
            return json{{"type", "tabulated"}, {"grid", grid}};
        }
    }
    return {};
}

json to_json(const analytics::MetricsRow& row) {
    json j{{"p", row.price},
           {"xi", row.xi},
           {"q_classical", row.q_classical},
           {"q_shared", row.q_shared},
           {"q_private_mean", row.q_private_mean},
           {"rev_classical", row.rev_classical},
           {"rev_shared", row.rev_shared},
           {"rev_private", row.rev_private},
           {"sw_classical", row.sw_classical},
           {"sw_shared", row.sw_shared},
           {"sw_private_paper", row.sw_private_paper},
           {"sw_private_physical", row.sw_private_physical}};
    if (!row.notes.empty()) j["notes"] = row.notes;
    return j;
}

namespace {

json to_json(const sim::Estimate& e) {
    return json{{"value", e.value}, {"half_width", e.half_width}};
}

}  // namespace

json to_json(const sim::SimReport& r) {
    return json{{"n_arrivals", r.n_arrivals},
                {"n_joined", r.n_joined},
                {"join_fraction", to_json(r.join_fraction)},
                {"mean_wait", to_json(r.mean_wait)},
                {"revenue_rate", to_json(r.revenue_rate)},
                {"welfare_rate_physical", to_json(r.welfare_rate)}};
}

json to_json(const sim::ValidationSummary& s) {
    json checks = json::array();
    for (const auto& c : s.checks) {
        checks.push_back({{"metric", c.name},
                          {"simulated", c.simulated},
                          {"analytic", c.analytic},
                          {"half_width", c.half_width},
                          {"pass", c.pass}});
    }
    return json{{"report", to_json(s.report)}, {"checks", checks}, {"all_pass", s.all_pass}};
}

json to_json(const equilibrium::EquilibriumSet& set) {
    json j{{"case", to_string(set.info)}, {"q_e", set.q_e}, {"q_m", set.q_m},
           {"q_s", set.q_s},              {"p_e", set.p_e}, {"p_m", set.p_m},
           {"p_s", set.p_s}};
    if (set.private_rule) {
        j["rule"] = json{{"xi_star", set.private_rule->xi_star},
                         {"price", set.private_rule->price},
                         {"mean_joining", set.private_rule->mean_joining},
                         {"value", set.private_rule->value}};
    }
    return j;
}

json to_json(const equilibrium::OrderingReport& report) {
    json checks = json::array();
    for (const auto& c : report.checks) {
        checks.push_back({{"label", c.label},
                          {"hypothesis_holds", c.hypothesis_holds},
                          {"observed", c.observed},
                          {"asserted", c.asserted}});
    }
    return json{{"classical", to_json(report.classical)},
                {"shared", to_json(report.shared)},
                {"ordering", ordering_string(report.classical, report.shared)},
                {"checks", checks}};
}

json to_json(const decision::Advice& a) {
    return json{{"audience", decision::to_string(a.audience)},
                {"regime", decision::to_string(a.regime)},
                {"action", decision::to_string(a.action)},
                {"rationale", a.rationale},
                {"lambda", a.lambda},
                {"harmonic_mean_belief", a.harmonic_mean},
                {"mean_belief", a.mean_belief},
                {"m_at_xi_c", a.m_at_xi_c},
                {"epsilon", a.epsilon},
                {"recommended_price", a.recommended_price},
                {"expected_value", a.expected_value}};
}

json to_json(const decision::RegionClass& rc) {
    return json{{"xi", rc.xi},
                {"lambda", rc.lambda},
                {"pvc", decision::to_string(rc.private_vs_classical.cmp)},
                {"svc", decision::to_string(rc.shared_vs_classical.cmp)},
                {"pvs", decision::to_string(rc.private_vs_shared.cmp)}};
}

double round_half_even(double x, int digits) {
    if (!std::isfinite(x)) return x;
    double scale = 1.0;
    for (int i = 0; i < digits; ++i) scale *= 10.0;
    // nearbyint honours the default FE_TONEAREST mode: ties to even
    return std::nearbyint(x * scale) / scale;
}

std::string format_fixed(double x, int digits) {
    if (std::isnan(x)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, round_half_even(x, digits));
    return buf;
}

const char* metrics_csv_header() {
    return "p,xi,q_classical,q_shared,q_private_mean,rev_classical,rev_shared,"
           "rev_private,sw_classical,sw_shared,sw_private_paper,sw_private_physical";
}

std::string metrics_csv_row(const analytics::MetricsRow& row, int digits) {
    std::string out;
    const double fields[] = {row.price,        row.xi,
                             row.q_classical,  row.q_shared,
                             row.q_private_mean, row.rev_classical,
                             row.rev_shared,   row.rev_private,
                             row.sw_classical, row.sw_shared,
                             row.sw_private_paper, row.sw_private_physical};
    for (std::size_t i = 0; i < std::size(fields); ++i) {
        if (i > 0) out += ',';
        out += format_fixed(fields[i], digits);
    }
    return out;
}

}  // namespace beliefq::io
