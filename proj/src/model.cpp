#include "beliefq/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "beliefq/numerics.hpp"

namespace beliefq {

const char* to_string(InfoCase c) {
    switch (c) {
        case InfoCase::Classical: return "classical";
        case InfoCase::SharedBelief: return "shared";
        case InfoCase::PrivateBelief: return "private";
    }
    return "?";
}

SystemParams SystemParams::make(double R, double C, double mu, double s2, double lambda) {
    SystemParams p{R, C, mu, s2, lambda};
    ValidationReport report = validate_params(p);
    if (!report.ok()) {
        throw ValidationError("invalid system parameters: " + report.summary());
    }
    return p;
}

bool SystemParams::is_mm1() const {
    const double exp_s2 = 2.0 / (mu * mu);
    return std::abs(s2 - exp_s2) <= 1e-12 * exp_s2;
}

namespace {

constexpr double kWeightSumTol = 1e-12;

double trapezoid_mass(const std::vector<std::pair<double, double>>& grid) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        total += 0.5 * (grid[i].second + grid[i + 1].second) *
                 (grid[i + 1].first - grid[i].first);
    }
    return total;
}

double tabulated_density(const std::vector<std::pair<double, double>>& grid, double x) {
    if (x < grid.front().first || x > grid.back().first) return 0.0;
    std::size_t i = 0;
    while (i + 2 < grid.size() && grid[i + 1].first <= x) ++i;
    const auto& [x0, f0] = grid[i];
    const auto& [x1, f1] = grid[i + 1];
    return f0 + (f1 - f0) * (x - x0) / (x1 - x0);
}

}  // namespace

BeliefDistribution BeliefDistribution::discrete(
    std::vector<std::pair<double, double>> atoms) {
    if (atoms.empty()) {
        throw ValidationError("discrete belief needs at least one atom");
    }
    std::map<double, double> merged;
    double sum = 0.0;
    for (const auto& [lam, w] : atoms) {
        if (!(lam > 0.0) || !std::isfinite(lam)) {
            throw ValidationError("belief support must be positive and finite");
        }
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw ValidationError("discrete belief weights must be positive");
        }
        merged[lam] += w;
        sum += w;
    }
    if (std::abs(sum - 1.0) > kWeightSumTol) {
        throw ValidationError("discrete belief weights must sum to 1 within 1e-12");
    }

    BeliefDistribution b;
    b.kind_ = Kind::Discrete;
    for (const auto& [lam, w] : merged) {
        b.atoms_.emplace_back(lam, w / sum);
    }
    b.lambda_min_ = b.atoms_.front().first;
    b.lambda_max_ = b.atoms_.back().first;
    double cum = 0.0;
    for (const auto& [lam, w] : b.atoms_) {
        b.mean_ += lam * w;
        b.inv_mean_ += w / lam;
        cum += w;
        b.cum_.push_back(cum);
    }
    b.cum_.back() = 1.0;
    return b;
}

BeliefDistribution BeliefDistribution::point_mass(double lam) {
    return discrete({{lam, 1.0}});
}

BeliefDistribution BeliefDistribution::uniform(double a, double b) {
    if (!(a > 0.0) || !(b > a) || !std::isfinite(b)) {
        throw ValidationError("uniform belief needs 0 < a < b");
    }
    BeliefDistribution d;
    d.kind_ = Kind::Uniform;
    d.uniform_lo_ = a;
    d.uniform_hi_ = b;
    d.lambda_min_ = a;
    d.lambda_max_ = b;
    d.mean_ = 0.5 * (a + b);
    d.inv_mean_ = std::log(b / a) / (b - a);
    return d;
}

BeliefDistribution BeliefDistribution::tabulated(
    std::vector<std::pair<double, double>> grid) {
    if (grid.size() < 2) {
        throw ValidationError("tabulated belief needs at least two grid points");
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i].first > 0.0) || !std::isfinite(grid[i].first)) {
            throw ValidationError("belief support must be positive and finite");
        }
        if (!(grid[i].second >= 0.0) || !std::isfinite(grid[i].second)) {
            throw ValidationError("tabulated density must be non-negative");
        }
        if (i > 0 && !(grid[i].first > grid[i - 1].first)) {
            throw ValidationError("tabulated grid must be strictly increasing");
        }
    }
    const double mass = trapezoid_mass(grid);
    if (!(mass > 0.0)) {
        throw ValidationError("tabulated density has no mass");
    }

    BeliefDistribution d;
    d.kind_ = Kind::Tabulated;
    d.renorm_deviation_ = std::abs(1.0 - mass);
    d.grid_ = std::move(grid);
    for (auto& [lam, f] : d.grid_) {
        f /= mass;
    }
    d.lambda_min_ = d.grid_.front().first;
    d.lambda_max_ = d.grid_.back().first;

    double cum = 0.0;
    d.cum_.push_back(0.0);
    for (std::size_t i = 0; i + 1 < d.grid_.size(); ++i) {
        cum += 0.5 * (d.grid_[i].second + d.grid_[i + 1].second) *
               (d.grid_[i + 1].first - d.grid_[i].first);
        d.cum_.push_back(cum);
    }
    d.cum_.back() = 1.0;

    d.mean_ = d.expect([](double l) { return l; });
    d.inv_mean_ = d.expect([](double l) { return 1.0 / l; });
    return d;
}

bool BeliefDistribution::is_point_mass() const {
    return kind_ == Kind::Discrete && atoms_.size() == 1;
}

double BeliefDistribution::cdf(double x) const {
    if (x < lambda_min_) return 0.0;
    if (x >= lambda_max_) return 1.0;
    switch (kind_) {
        case Kind::Discrete: {
            double mass = 0.0;
            for (const auto& [lam, w] : atoms_) {
                if (lam <= x) mass += w;
                else break;
            }
            return mass;
        }
        case Kind::Uniform:
            return (x - uniform_lo_) / (uniform_hi_ - uniform_lo_);
        case Kind::Tabulated: {
            std::size_t i = 0;
            while (i + 2 < grid_.size() && grid_[i + 1].first <= x) ++i;
            const auto& [x0, f0] = grid_[i];
            const auto& [x1, f1] = grid_[i + 1];
            const double d = x - x0;
            return cum_[i] + f0 * d + 0.5 * (f1 - f0) * d * d / (x1 - x0);
        }
    }
    return 0.0;
}

double BeliefDistribution::expect(const std::function<double(double)>& g,
                                  std::span<const double> kinks) const {
    switch (kind_) {
        case Kind::Discrete: {
            double sum = 0.0;
            for (const auto& [lam, w] : atoms_) {
                sum += w * g(lam);
            }
            return sum;
        }
        case Kind::Uniform: {
            const double width = uniform_hi_ - uniform_lo_;
            return num::integrate_split(g, uniform_lo_, uniform_hi_, kinks, 1e-12) / width;
        }
        case Kind::Tabulated: {
            std::vector<double> splits(kinks.begin(), kinks.end());
            for (std::size_t i = 1; i + 1 < grid_.size(); ++i) {
                splits.push_back(grid_[i].first);
            }
            auto weighted = [&](double l) { return g(l) * tabulated_density(grid_, l); };
            return num::integrate_split(weighted, lambda_min_, lambda_max_, splits, 1e-12);
        }
    }
    return 0.0;
}

double BeliefDistribution::partial_expect(const std::function<double(double)>& g,
                                          double lo, double hi) const {
    switch (kind_) {
        case Kind::Discrete: {
            double sum = 0.0;
            for (const auto& [lam, w] : atoms_) {
                if (lam > lo && lam <= hi) sum += w * g(lam);
            }
            return sum;
        }
        case Kind::Uniform: {
            const double a = std::max(lo, uniform_lo_);
            const double b = std::min(hi, uniform_hi_);
            if (a >= b) return 0.0;
            return num::integrate(g, a, b, 1e-12) / (uniform_hi_ - uniform_lo_);
        }
        case Kind::Tabulated: {
            const double a = std::max(lo, lambda_min_);
            const double b = std::min(hi, lambda_max_);
            if (a >= b) return 0.0;
            std::vector<double> splits;
            for (std::size_t i = 1; i + 1 < grid_.size(); ++i) {
                splits.push_back(grid_[i].first);
            }
            auto weighted = [&](double l) { return g(l) * tabulated_density(grid_, l); };
            return num::integrate_split(weighted, a, b, splits, 1e-12);
        }
    }
    return 0.0;
}

double BeliefDistribution::sample(std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double u = unit(rng);
    switch (kind_) {
        case Kind::Discrete: {
            const auto it = std::lower_bound(cum_.begin(), cum_.end(), u);
            const std::size_t i =
                std::min<std::size_t>(it - cum_.begin(), atoms_.size() - 1);
            return atoms_[i].first;
        }
        case Kind::Uniform:
            return uniform_lo_ + (uniform_hi_ - uniform_lo_) * u;
        case Kind::Tabulated: {
            // cum_ holds mass at segment starts; invert the quadratic piece
            std::size_t i = 0;
            while (i + 2 < grid_.size() && cum_[i + 1] <= u) ++i;
            const auto& [x0, f0] = grid_[i];
            const auto& [x1, f1] = grid_[i + 1];
            const double h = x1 - x0;
            const double a = 0.5 * (f1 - f0) / h;
            const double rem = u - cum_[i];
            double d;
            if (std::abs(a) < 1e-14 * std::max(f0, 1e-30)) {
                d = (f0 > 0.0) ? rem / f0 : h;
            } else {
                const double disc = std::max(f0 * f0 + 4.0 * a * rem, 0.0);
                d = (-f0 + std::sqrt(disc)) / (2.0 * a);
            }
            return std::clamp(x0 + d, x0, x1);
        }
    }
    return lambda_min_;
}

double expect(const BeliefDistribution& belief, const ExpectationRequest& req,
              const SystemParams& params) {
    using T = ExpectationRequest::Transform;
    switch (req.transform) {
        case T::Waiting:
        case T::WaitingSquared: {
            const double q = req.q;
            if (q < 0.0 || q > 1.0) {
                throw ValidationError("joining probability must lie in [0, 1]");
            }
            if (q * belief.lambda_max() >= params.mu) {
                throw UnstableRegime("q * lambda_max >= mu: waiting time diverges");
            }
            const bool squared = req.transform == T::WaitingSquared;
            return belief.expect([&](double l) {
                const double w = detail::pk_wait(params.mu, params.s2, q * l);
                return squared ? w * w : w;
            });
        }
        case T::Reciprocal:
            return belief.inv_mean();
        case T::IndicatorBelow:
            return belief.cdf(req.xi);
        case T::ClippedRatio: {
            const double xi = req.xi;
            if (xi <= 0.0) return 0.0;
            if (xi >= belief.lambda_max()) return 1.0;
            if (xi <= belief.lambda_min()) return xi * belief.inv_mean();
            return belief.cdf(xi) +
                   xi * belief.partial_expect([](double l) { return 1.0 / l; }, xi,
                                              belief.lambda_max());
        }
    }
    return 0.0;
}

bool ValidationReport::ok() const {
    return std::none_of(issues.begin(), issues.end(), [](const ValidationIssue& i) {
        return i.severity == ValidationIssue::Severity::Hard;
    });
}

bool ValidationReport::clean() const { return issues.empty(); }

std::string ValidationReport::summary() const {
    std::ostringstream out;
    for (const auto& issue : issues) {
        out << (issue.severity == ValidationIssue::Severity::Hard ? "[error] " : "[warning] ")
            << issue.code << ": " << issue.message << "\n";
    }
    return out.str();
}

namespace {

void push(ValidationReport& r, ValidationIssue::Severity sev, std::string code,
          std::string msg) {
    r.issues.push_back({sev, std::move(code), std::move(msg)});
}

}  // namespace

ValidationReport validate_params(const SystemParams& p) {
    using S = ValidationIssue::Severity;
    ValidationReport r;
    if (!(p.mu > 0.0) || !std::isfinite(p.mu)) {
        push(r, S::Hard, "service_rate", "mu must be positive and finite");
        return r;
    }
    if (!(p.C > 0.0)) {
        push(r, S::Hard, "wait_cost", "C must be positive");
    }
    if (p.R < p.C / p.mu) {
        push(r, S::Hard, "reward_floor", "R >= C/mu required, otherwise nobody joins");
    }
    if (!(p.lambda > 0.0) || !(p.lambda < p.mu)) {
        push(r, S::Hard, "stability", "true arrival rate must satisfy 0 < lambda < mu");
    }
    if (p.s2 < (1.0 - 1e-12) / (p.mu * p.mu)) {
        push(r, S::Hard, "service_moment",
             "E[S^2] >= 1/mu^2 required (equality iff deterministic service)");
    }
    return r;
}

ValidationReport validate(const SystemParams& params, const BeliefDistribution& belief) {
    using S = ValidationIssue::Severity;
    ValidationReport r = validate_params(params);
    if (params.mu > 0.0 && belief.lambda_max() > params.mu) {
        push(r, S::Hard, "support_cap",
             "belief support exceeds mu; waiting time diverges beyond the cap");
    }
    if (belief.is_point_mass()) {
        push(r, S::Warning, "degenerate_belief",
             "single point mass; intended for oracle and degenerate tests only");
    }
    if (!(belief.lambda_min() < params.lambda && params.lambda < belief.lambda_max())) {
        push(r, S::Warning, "support_straddle",
             "true arrival rate lies outside (lambda_min, lambda_max)");
    }
    if (belief.renorm_deviation() > 1e-9) {
        push(r, S::Warning, "renormalized",
             "tabulated density integrated to " +
                 std::to_string(1.0 + belief.renorm_deviation()) +
                 " before renormalization");
    }
    return r;
}

}  // namespace beliefq
