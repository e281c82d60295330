#include "beliefq/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "beliefq/io.hpp"
#include "beliefq/numerics.hpp"
#include "beliefq/reproduce.hpp"

namespace beliefq::cli {

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

std::vector<std::pair<double, double>> parse_pairs(const std::string& text) {
    std::vector<std::pair<double, double>> out;
    std::istringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) {
            throw ValidationError("expected comma-separated x:y pairs, got \"" + text + "\"");
        }
        out.emplace_back(std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1)));
    }
    return out;
}

/// Shared --params/--belief handling. Flags override file fields; defaults
/// come last (s2 defaults to exponential service).
struct ModelInputs {
    std::string params_path;
    std::string belief_path;
    double R = NAN, C = NAN, mu = NAN, s2 = NAN, lambda = NAN;
    std::string uniform_text;
    std::string discrete_text;
    std::string tabulated_text;
    double point = NAN;
    bool allow_warnings = true;

    void attach(CLI::App* cmd) {
        cmd->add_option("--params", params_path, "system parameters JSON file");
        cmd->add_option("--belief", belief_path, "belief distribution JSON file");
        cmd->add_option("--R", R, "reward per completed service (overrides file)");
        cmd->add_option("--C", C, "waiting cost per unit time (overrides file)");
        cmd->add_option("--mu", mu, "service rate (overrides file)");
        cmd->add_option("--s2", s2, "E[S^2]; defaults to 2/mu^2 (exponential)");
        cmd->add_option("--lambda", lambda, "true arrival rate (overrides file)");
        cmd->add_option("--uniform", uniform_text, "inline uniform belief: a,b");
        cmd->add_option("--discrete", discrete_text, "inline discrete belief: l:w,l:w,...");
        cmd->add_option("--tabulated", tabulated_text, "inline tabulated belief: l:f,l:f,...");
        cmd->add_option("--point", point, "inline point-mass belief");
    }

    SystemParams params() const {
        double vr = R, vc = C, vmu = mu, vs2 = s2, vl = lambda;
        if (!params_path.empty()) {
            const SystemParams file = io::load_params(params_path);
            if (std::isnan(vr)) vr = file.R;
            if (std::isnan(vc)) vc = file.C;
            if (std::isnan(vmu)) vmu = file.mu;
            if (std::isnan(vs2)) vs2 = file.s2;
            if (std::isnan(vl)) vl = file.lambda;
        }
        if (std::isnan(vmu)) {
            throw ValidationError("no service rate: pass --params FILE or --mu");
        }
        if (std::isnan(vs2)) vs2 = 2.0 / (vmu * vmu);
        if (std::isnan(vr) || std::isnan(vc) || std::isnan(vl)) {
            throw ValidationError("incomplete system parameters: need R, C, mu, lambda");
        }
        return SystemParams::make(vr, vc, vmu, vs2, vl);
    }

    BeliefDistribution belief() const {
        const int inline_count = !uniform_text.empty() + !discrete_text.empty() +
                                 !tabulated_text.empty() + !std::isnan(point);
        if (inline_count > 1) {
            throw ValidationError("give at most one inline belief");
        }
        if (!uniform_text.empty()) {
            std::istringstream stream(uniform_text);
            double a, b;
            char comma;
            if (!(stream >> a >> comma >> b) || comma != ',') {
                throw ValidationError("--uniform expects a,b");
            }
            return BeliefDistribution::uniform(a, b);
        }
        if (!discrete_text.empty()) {
            return BeliefDistribution::discrete(parse_pairs(discrete_text));
        }
        if (!tabulated_text.empty()) {
            return BeliefDistribution::tabulated(parse_pairs(tabulated_text));
        }
        if (!std::isnan(point)) {
            return BeliefDistribution::point_mass(point);
        }
        if (belief_path.empty()) {
            throw ValidationError("no belief: pass --belief FILE or an inline belief");
        }
        return io::load_belief(belief_path);
    }

    /// Validates the pair; hard errors throw, warnings go to err.
    std::pair<SystemParams, BeliefDistribution> load(std::ostream& err) const {
        SystemParams p = params();
        BeliefDistribution b = belief();
        const ValidationReport report = validate(p, b);
        if (!report.ok()) {
            throw ValidationError(report.summary());
        }
        if (!report.clean()) {
            err << report.summary();
        }
        return {std::move(p), std::move(b)};
    }
};

struct OutputOptions {
    std::string out_path;
    std::string format;
    int precision = 9;

    void attach(CLI::App* cmd, const std::string& default_format, int default_precision) {
        format = default_format;
        precision = default_precision;
        cmd->add_option("--out", out_path, "write to file instead of stdout");
        cmd->add_option("--format", format, "output format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--precision", precision, "decimal digits for csv output");
    }

    /// Target stream; keeps the file alive via the returned holder.
    std::ostream& stream(std::ostream& fallback, std::unique_ptr<std::ofstream>& holder) const {
        if (out_path.empty()) {
            return fallback;
        }
        holder = std::make_unique<std::ofstream>(out_path);
        if (!*holder) {
            throw IoError("cannot write " + out_path);
        }
        return *holder;
    }
};

InfoCase parse_case(const std::string& text) {
    if (text == "classical") return InfoCase::Classical;
    if (text == "shared") return InfoCase::SharedBelief;
    if (text == "private") return InfoCase::PrivateBelief;
    throw ValidationError("case must be classical, shared, or private");
}

BeliefDistribution shift_belief(const BeliefDistribution& b, double target_mean) {
    const double delta = target_mean - b.mean();
    switch (b.kind()) {
        case BeliefDistribution::Kind::Uniform:
            return BeliefDistribution::uniform(b.uniform_lo() + delta,
                                               b.uniform_hi() + delta);
        case BeliefDistribution::Kind::Discrete: {
            auto atoms = b.atoms();
            for (auto& [l, w] : atoms) l += delta;
            return BeliefDistribution::discrete(std::move(atoms));
        }
        case BeliefDistribution::Kind::Tabulated: {
            auto grid = b.grid();
            for (auto& [l, f] : grid) l += delta;
            return BeliefDistribution::tabulated(std::move(grid));
        }
    }
    return b;
}

BeliefDistribution scale_belief(const BeliefDistribution& b, double target_half_width) {
    const double mean = b.mean();
    if (target_half_width == 0.0) {
        return BeliefDistribution::point_mass(mean);
    }
    const double current = 0.5 * (b.lambda_max() - b.lambda_min());
    if (current == 0.0) {
        return BeliefDistribution::uniform(mean - target_half_width,
                                           mean + target_half_width);
    }
    const double k = target_half_width / current;
    switch (b.kind()) {
        case BeliefDistribution::Kind::Uniform:
            return BeliefDistribution::uniform(mean + k * (b.uniform_lo() - mean),
                                               mean + k * (b.uniform_hi() - mean));
        case BeliefDistribution::Kind::Discrete: {
            auto atoms = b.atoms();
            for (auto& [l, w] : atoms) l = mean + k * (l - mean);
            return BeliefDistribution::discrete(std::move(atoms));
        }
        case BeliefDistribution::Kind::Tabulated: {
            auto grid = b.grid();
            for (auto& [l, f] : grid) {
                l = mean + k * (l - mean);
                f /= k;  // keeps the density normalized under the affine map
            }
            return BeliefDistribution::tabulated(std::move(grid));
        }
    }
    return b;
}

class CsvTraceSink : public sim::TraceSink {
public:
    explicit CsvTraceSink(const std::string& path) : file_(path) {
        if (!file_) {
            throw IoError("cannot write " + path);
        }
        file_ << "arrival_time,belief,joined,wait\n";
    }

    void on_arrival(double time, double belief, bool joined, double sojourn) override {
        file_ << time << ',';
        if (!std::isnan(belief)) file_ << belief;
        file_ << ',' << (joined ? 1 : 0) << ',';
        if (joined) file_ << sojourn;
        file_ << '\n';
    }

private:
    std::ofstream file_;
};

void emit_region_grid(const decision::RegionGrid& grid, std::ostream& out,
                      std::ostream& curves, int precision) {
    out << "xi,lambda,pvc,svc,pvs\n";
    for (std::size_t j = 0; j < grid.lambdas.size(); ++j) {
        for (std::size_t i = 0; i < grid.xis.size(); ++i) {
            const decision::RegionClass& rc = grid.cells[j * grid.xis.size() + i];
            out << io::format_fixed(rc.xi, precision) << ','
                << io::format_fixed(rc.lambda, precision) << ','
                << decision::to_string(rc.private_vs_classical.cmp) << ','
                << decision::to_string(rc.shared_vs_classical.cmp) << ','
                << decision::to_string(rc.private_vs_shared.cmp) << '\n';
        }
    }
    curves << "curve,x,y\n";
    for (const auto& [x, y] : grid.m_curve) {
        curves << "M," << io::format_fixed(x, precision) << ','
               << io::format_fixed(y, precision) << '\n';
    }
    if (grid.xi0) {
        for (double lam : grid.lambdas) {
            curves << "xi0," << io::format_fixed(*grid.xi0, precision) << ','
                   << io::format_fixed(lam, precision) << '\n';
        }
    }
    for (const auto& [x, lam] : grid.svc_curve) {
        curves << "svc," << io::format_fixed(x, precision) << ','
               << io::format_fixed(lam, precision) << '\n';
    }
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"equilibrium, revenue and welfare analysis of an unobservable "
                 "M/G/1 queue under three customer-information levels"};
    app.require_subcommand(1);

    // ---- analyze ----
    auto* analyze = app.add_subcommand(
        "analyze", "joining, revenue and welfare metrics at one fee");
    ModelInputs analyze_in;
    analyze_in.attach(analyze);
    double analyze_p = 0.0;
    analyze->add_option("--p", analyze_p, "entrance fee")->required();
    OutputOptions analyze_out;
    analyze_out.attach(analyze, "json", 9);

    // ---- sweep ----
    auto* sweep = app.add_subcommand("sweep", "metrics along a fee or belief axis");
    ModelInputs sweep_in;
    sweep_in.attach(sweep);
    std::string sweep_axis = "p";
    double sweep_from = 0.0, sweep_to = 0.0, sweep_p = NAN;
    int sweep_steps = 0;
    sweep->add_option("--axis", sweep_axis, "p | belief-mean | belief-spread")
        ->check(CLI::IsMember({"p", "belief-mean", "belief-spread"}));
    sweep->add_option("--from", sweep_from, "axis start")->required();
    sweep->add_option("--to", sweep_to, "axis end")->required();
    sweep->add_option("--steps", sweep_steps, "number of rows")->required();
    sweep->add_option("--p", sweep_p, "fixed fee for the belief axes");
    OutputOptions sweep_out;
    sweep_out.attach(sweep, "csv", 9);

    // ---- equilibria ----
    auto* equilibria = app.add_subcommand(
        "equilibria", "individual, revenue-optimal and welfare-optimal joining");
    ModelInputs eq_in;
    eq_in.attach(equilibria);
    std::string eq_welfare = "physical";
    equilibria->add_option("--welfare", eq_welfare, "private welfare variant")
        ->check(CLI::IsMember({"paper", "physical"}));
    OutputOptions eq_out;
    eq_out.attach(equilibria, "json", 9);

    // ---- threshold-map ----
    auto* tmap = app.add_subcommand(
        "threshold-map", "revenue-dominance region grid plus switch curves");
    ModelInputs tmap_in;
    tmap_in.attach(tmap);
    double xi_from = 0.1, xi_to = 0.0, lam_from = 0.0, lam_to = 0.0;
    int xi_steps = 40, lam_steps = 40;
    std::string curves_path;
    tmap->add_option("--xi-from", xi_from, "threshold-rate axis start")->required();
    tmap->add_option("--xi-to", xi_to, "threshold-rate axis end")->required();
    tmap->add_option("--lambda-from", lam_from, "true-rate axis start")->required();
    tmap->add_option("--lambda-to", lam_to, "true-rate axis end")->required();
    tmap->add_option("--xi-steps", xi_steps, "cells along xi");
    tmap->add_option("--lambda-steps", lam_steps, "cells along lambda");
    tmap->add_option("--curves", curves_path,
                     "switch-curve polyline file (default <out>.curves.csv)");
    OutputOptions tmap_out;
    tmap_out.attach(tmap, "csv", 6);

    // ---- advise ----
    auto* advise = app.add_subcommand("advise", "information-disclosure recommendation");
    ModelInputs advise_in;
    advise_in.attach(advise);
    std::string audience = "rm";
    advise->add_option("--audience", audience, "rm (revenue) or so (welfare)")
        ->check(CLI::IsMember({"rm", "so"}));
    OutputOptions advise_out;
    advise_out.attach(advise, "json", 9);

    // ---- simulate ----
    auto* simulate = app.add_subcommand("simulate", "discrete-event cross-check");
    ModelInputs sim_in;
    sim_in.attach(simulate);
    std::string sim_case = "private", sim_service = "exponential", trace_path;
    double sim_p = 0.0, sim_horizon = 1e5, sim_warmup = 0.0;
    std::uint64_t sim_seed = 1;
    int sim_batches = 30;
    bool sim_validate = false;
    simulate->add_option("--case", sim_case, "classical | shared | private")
        ->check(CLI::IsMember({"classical", "shared", "private"}));
    simulate->add_option("--p", sim_p, "entrance fee")->required();
    simulate->add_option("--horizon", sim_horizon, "simulated time units");
    simulate->add_option("--warmup", sim_warmup, "discarded initial time");
    simulate->add_option("--seed", sim_seed, "RNG seed");
    simulate->add_option("--service", sim_service,
                         "exponential | deterministic | lognormal")
        ->check(CLI::IsMember({"exponential", "deterministic", "lognormal"}));
    simulate->add_option("--batches", sim_batches, "batch-means windows (>= 20)");
    simulate->add_option("--trace", trace_path, "per-arrival CSV event trace");
    simulate->add_flag("--validate", sim_validate,
                       "also compare against the analytic values");
    OutputOptions sim_out;
    sim_out.attach(simulate, "json", 9);

    // ---- reproduce ----
    auto* repro = app.add_subcommand("reproduce",
                                     "published numerical experiments, bit-for-bit");
    std::string target;
    repro->add_option("--target", target, "dataset to emit")
        ->required()
        ->check(CLI::IsMember({"table-mean", "table-spread", "table-p-optimistic",
                               "table-p-pessimistic", "fig-equilibria", "fig-regions"}));
    OutputOptions repro_out;
    repro_out.attach(repro, "csv", 3);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : kExitValidation;
    }

    try {
        std::unique_ptr<std::ofstream> file_holder;

        if (*analyze) {
            auto [params, belief] = analyze_in.load(err);
            const analytics::MetricsRow row = analytics::metrics_row(params, belief, analyze_p);
            std::ostream& os = analyze_out.stream(out, file_holder);
            if (analyze_out.format == "json") {
                os << io::to_json(row).dump(2) << '\n';
            } else {
                os << io::metrics_csv_header() << '\n'
                   << io::metrics_csv_row(row, analyze_out.precision) << '\n';
            }
            return 0;
        }

        if (*sweep) {
            auto [params, belief] = sweep_in.load(err);
            if (sweep_axis == "p") {
                const double p_max = params.R - params.C / params.mu;
                if (sweep_from < 0.0 || sweep_to > p_max || sweep_from > sweep_to) {
                    throw ValidationError("fee axis must stay within [0, R - C/mu]");
                }
            } else if (std::isnan(sweep_p)) {
                throw ValidationError("belief axes need a fixed fee --p");
            }
            std::vector<analytics::MetricsRow> rows(std::max(sweep_steps, 0));
            num::parallel_for(rows.size(), [&](std::size_t i) {
                const double x =
                    sweep_steps > 1
                        ? sweep_from + (sweep_to - sweep_from) * static_cast<double>(i) /
                                           (sweep_steps - 1)
                        : sweep_from;
                if (sweep_axis == "p") {
                    rows[i] = analytics::metrics_row(params, belief, x);
                } else if (sweep_axis == "belief-mean") {
                    rows[i] = analytics::metrics_row(params, shift_belief(belief, x), sweep_p);
                } else {
                    rows[i] = analytics::metrics_row(params, scale_belief(belief, x), sweep_p);
                }
            });
            std::ostream& os = sweep_out.stream(out, file_holder);
            if (sweep_out.format == "json") {
                nlohmann::json arr = nlohmann::json::array();
                for (const auto& row : rows) arr.push_back(io::to_json(row));
                os << arr.dump(2) << '\n';
            } else {
                os << io::metrics_csv_header() << '\n';
                for (const auto& row : rows) {
                    os << io::metrics_csv_row(row, sweep_out.precision) << '\n';
                }
            }
            return 0;
        }

        if (*equilibria) {
            auto [params, belief] = eq_in.load(err);
            const auto variant = eq_welfare == "paper" ? analytics::WelfareVariant::Paper
                                                       : analytics::WelfareVariant::Physical;
            nlohmann::json j;
            const auto classical = equilibrium::solve_classical(params);
            const auto shared = equilibrium::solve_shared(params, belief);
            j["classical"] = io::to_json(classical);
            j["shared"] = io::to_json(shared);
            j["private"] = {
                {"individual", io::to_json(equilibrium::solve_private(
                                   params, belief, equilibrium::Regime::Individual))},
                {"rm", io::to_json(equilibrium::solve_private(
                           params, belief, equilibrium::Regime::RevenueMax))},
                {"so", io::to_json(equilibrium::solve_private(
                           params, belief, equilibrium::Regime::SocialOpt, variant))}};
            j["ordering"] = equilibrium::ordering_string(classical, shared);
            if (params.is_mm1()) {
                j["checks"] = io::to_json(equilibrium::check_orderings(params, belief))["checks"];
            }
            std::ostream& os = eq_out.stream(out, file_holder);
            os << j.dump(2) << '\n';
            return 0;
        }

        if (*tmap) {
            auto [params, belief] = tmap_in.load(err);
            if (xi_to >= params.mu || lam_to >= params.mu || xi_from < 0.0 ||
                lam_from <= 0.0) {
                throw ValidationError("grid axes must stay inside (0, mu)");
            }
            const decision::RegionGrid grid = decision::figure1_map(
                params, belief, xi_from, xi_to, lam_from, lam_to, xi_steps, lam_steps);
            std::ostream& os = tmap_out.stream(out, file_holder);
            std::unique_ptr<std::ofstream> curve_holder;
            if (curves_path.empty() && !tmap_out.out_path.empty()) {
                curves_path = tmap_out.out_path + ".curves.csv";
            }
            if (!curves_path.empty()) {
                curve_holder = std::make_unique<std::ofstream>(curves_path);
                if (!*curve_holder) {
                    throw IoError("cannot write " + curves_path);
                }
                emit_region_grid(grid, os, *curve_holder, tmap_out.precision);
            } else {
                std::ostringstream curves;
                emit_region_grid(grid, os, curves, tmap_out.precision);
                os << '\n' << curves.str();
            }
            return 0;
        }

        if (*advise) {
            auto [params, belief] = advise_in.load(err);
            const auto who = audience == "rm" ? decision::Audience::RevenueMaximizer
                                              : decision::Audience::SocialOptimizer;
            std::ostream& os = advise_out.stream(out, file_holder);
            os << io::to_json(decision::advise(params, belief, who)).dump(2) << '\n';
            return 0;
        }

        if (*simulate) {
            auto [params, belief] = sim_in.load(err);
            sim::SimConfig config{params, belief, parse_case(sim_case), sim_p,
                                  sim_horizon, sim_warmup, sim_seed,
                                  sim::ServiceDist::Exponential, sim_batches};
            if (sim_service == "deterministic") {
                config.service = sim::ServiceDist::Deterministic;
            } else if (sim_service == "lognormal") {
                config.service = sim::ServiceDist::Lognormal;
            }
            std::unique_ptr<CsvTraceSink> sink;
            if (!trace_path.empty()) {
                sink = std::make_unique<CsvTraceSink>(trace_path);
            }
            std::ostream& os = sim_out.stream(out, file_holder);
            if (sim_validate) {
                os << io::to_json(sim::validate_against_analytics(config)).dump(2) << '\n';
            } else {
                os << io::to_json(sim::run(config, sink.get())).dump(2) << '\n';
            }
            return 0;
        }

        if (*repro) {
            std::ostream& os = repro_out.stream(out, file_holder);
            const int digits = repro_out.precision;
            const bool json_format = repro_out.format == "json";
            auto fmt = [&](double x) { return io::format_fixed(x, digits); };
            if (target == "table-mean") {
                const auto rows = reproduce::table_mean();
                if (json_format) {
                    nlohmann::json arr = nlohmann::json::array();
                    for (const auto& r : rows) {
                        arr.push_back({{"belief", r.belief},
                                       {"harmonic_mean", r.harmonic_mean},
                                       {"mean", r.mean},
                                       {"M_xi", r.m_at_xi},
                                       {"rev_private", r.rev_private},
                                       {"rev_shared", r.rev_shared},
                                       {"rev_classical", r.rev_classical}});
                    }
                    os << arr.dump(2) << '\n';
                } else {
                    os << "belief,harmonic_mean,mean,M_xi,rev_private,rev_shared,"
                          "rev_classical\n";
                    for (const auto& r : rows) {
                        os << r.belief << ',' << fmt(r.harmonic_mean) << ',' << fmt(r.mean)
                           << ',' << fmt(r.m_at_xi) << ',' << fmt(r.rev_private) << ','
                           << fmt(r.rev_shared) << ',' << fmt(r.rev_classical) << '\n';
                    }
                }
            } else if (target == "table-spread") {
                const auto rows = reproduce::table_spread();
                if (json_format) {
                    nlohmann::json arr = nlohmann::json::array();
                    for (const auto& r : rows) {
                        arr.push_back({{"level", r.level},
                                       {"belief", r.belief},
                                       {"mean", r.mean},
                                       {"rev_private", r.rev_private},
                                       {"rev_shared", r.rev_shared},
                                       {"rev_classical", r.rev_classical}});
                    }
                    os << arr.dump(2) << '\n';
                } else {
                    os << "level,belief,mean,rev_private,rev_shared,rev_classical\n";
                    for (const auto& r : rows) {
                        os << r.level << ',' << r.belief << ',' << fmt(r.mean) << ','
                           << fmt(r.rev_private) << ',' << fmt(r.rev_shared) << ','
                           << fmt(r.rev_classical) << '\n';
                    }
                }
            } else if (target == "table-p-optimistic" || target == "table-p-pessimistic") {
                const auto rows = reproduce::table_p(target == "table-p-optimistic");
                if (json_format) {
                    nlohmann::json arr = nlohmann::json::array();
                    for (const auto& r : rows) {
                        arr.push_back({{"p", r.p},
                                       {"xi", r.xi},
                                       {"rev_private", r.rev_private},
                                       {"rev_shared", r.rev_shared},
                                       {"rev_classical", r.rev_classical}});
                    }
                    os << arr.dump(2) << '\n';
                } else {
                    os << "p,xi,rev_private,rev_shared,rev_classical\n";
                    for (const auto& r : rows) {
                        os << fmt(r.p) << ',' << fmt(r.xi) << ',' << fmt(r.rev_private)
                           << ',' << fmt(r.rev_shared) << ',' << fmt(r.rev_classical)
                           << '\n';
                    }
                }
            } else if (target == "fig-equilibria") {
                const auto fig = reproduce::fig_equilibria();
                if (json_format) {
                    nlohmann::json j{{"benefit_cost_ratio", fig.benefit_cost_ratio},
                                     {"classical", io::to_json(fig.classical)},
                                     {"shared", io::to_json(fig.shared)},
                                     {"ordering", fig.ordering}};
                    nlohmann::json curve = nlohmann::json::array();
                    for (const auto& row : fig.curve) {
                        curve.push_back({row[0], row[1], row[2], row[3], row[4]});
                    }
                    j["curve"] = curve;
                    os << j.dump(2) << '\n';
                } else {
                    os << "q,mu_EW2_shared,mu_W2_classical,EW_shared,W_classical\n";
                    for (const auto& row : fig.curve) {
                        os << fmt(row[0]) << ',' << fmt(row[1]) << ',' << fmt(row[2])
                           << ',' << fmt(row[3]) << ',' << fmt(row[4]) << '\n';
                    }
                    os << "# R/C = " << fmt(fig.benefit_cost_ratio) << '\n';
                    os << "# q_m^S=" << fmt(fig.shared.q_m)
                       << " q_m^C=" << fmt(fig.classical.q_m)
                       << " q_s^C=" << fmt(fig.classical.q_s)
                       << " q_s^S=" << fmt(fig.shared.q_s)
                       << " q_e^S=" << fmt(fig.shared.q_e)
                       << " q_e^C=" << fmt(fig.classical.q_e) << '\n';
                    os << "# ordering: " << fig.ordering << '\n';
                }
            } else {  // fig-regions
                const auto grid = reproduce::fig_regions();
                std::ostringstream curves;
                emit_region_grid(grid, os, curves, digits);
                os << '\n' << curves.str();
            }
            return 0;
        }
    } catch (const IoError& e) {
        err << "io error: " << e.what() << '\n';
        return kExitIo;
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const NonUnimodal& e) {
        err << "numeric error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::domain_error& e) {
        err << "numeric error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::runtime_error& e) {
        err << "numeric error: " << e.what() << '\n';
        return kExitNumeric;
    }
    return 0;
}

}  // namespace beliefq::cli
