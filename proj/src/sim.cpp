#include "beliefq/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "beliefq/analytics.hpp"

namespace beliefq::sim {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double t_quantile_975(int df) {
    // two-sided 95% Student-t critical values
    static constexpr double table[] = {
        12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228,
        2.201,  2.179, 2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086,
        2.080,  2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042,
        2.040,  2.037, 2.035, 2.032, 2.030, 2.028, 2.026, 2.024, 2.023, 2.021};
    if (df < 1) return table[0];
    if (df <= 40) return table[df - 1];
    if (df <= 60) return 2.000;
    if (df <= 120) return 1.980;
    return 1.960;
}

Estimate batch_estimate(const std::vector<double>& values) {
    const int n = static_cast<int>(values.size());
    if (n == 0) return {kNan, kNan};
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= n;
    if (n == 1) return {mean, kNan};
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= (n - 1);
    const double half = t_quantile_975(n - 1) * std::sqrt(var / n);
    return {mean, half};
}

void validate_config(const SimConfig& cfg) {
    if (!(cfg.horizon > cfg.warmup) || cfg.warmup < 0.0) {
        throw ValidationError("simulation needs horizon > warmup >= 0");
    }
    if (cfg.batches < 20) {
        throw ValidationError("batch-means intervals need at least 20 batches");
    }
    const double mu = cfg.params.mu;
    const double s2 = cfg.params.s2;
    auto matches = [&](double want) { return std::abs(s2 - want) <= 1e-9 * want; };
    switch (cfg.service) {
        case ServiceDist::Exponential:
            if (!matches(2.0 / (mu * mu))) {
                throw ValidationError("exponential service requires s2 = 2/mu^2");
            }
            break;
        case ServiceDist::Deterministic:
            if (!matches(1.0 / (mu * mu))) {
                throw ValidationError("deterministic service requires s2 = 1/mu^2");
            }
            break;
        case ServiceDist::Lognormal:
            if (!(s2 > 1.0 / (mu * mu) * (1.0 + 1e-12))) {
                throw ValidationError("lognormal service requires s2 > 1/mu^2");
            }
            break;
    }
}

class ServiceSampler {
public:
    ServiceSampler(const SimConfig& cfg)
        : kind_(cfg.service), expo_(cfg.params.mu), fixed_(1.0 / cfg.params.mu) {
        if (kind_ == ServiceDist::Lognormal) {
            // match (1/mu, s2): sigma^2 = ln(s2 mu^2), m = -ln(mu) - sigma^2/2
            const double sigma2 = std::log(cfg.params.s2 * cfg.params.mu * cfg.params.mu);
            normal_ = std::normal_distribution<double>(-std::log(cfg.params.mu) - 0.5 * sigma2,
                                                       std::sqrt(sigma2));
        }
    }

    double operator()(std::mt19937_64& rng) {
        switch (kind_) {
            case ServiceDist::Exponential: return expo_(rng);
            case ServiceDist::Deterministic: return fixed_;
            case ServiceDist::Lognormal: return std::exp(normal_(rng));
        }
        return fixed_;
    }

private:
    ServiceDist kind_;
    std::exponential_distribution<double> expo_;
    double fixed_;
    std::normal_distribution<double> normal_;
};

}  // namespace

const char* to_string(ServiceDist d) {
    switch (d) {
        case ServiceDist::Exponential: return "exponential";
        case ServiceDist::Deterministic: return "deterministic";
        case ServiceDist::Lognormal: return "lognormal";
    }
    return "?";
}

SimReport run(const SimConfig& cfg, TraceSink* sink) {
    validate_config(cfg);
    const SystemParams& par = cfg.params;
    std::mt19937_64 rng(cfg.seed);
    std::exponential_distribution<double> interarrival(par.lambda);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    ServiceSampler service(cfg);

    const double xi = analytics::xi_of_price(par, cfg.price);
    double q_common = 0.0;
    if (cfg.info == InfoCase::Classical) {
        q_common = analytics::q_classical_of_price(par, cfg.price);
    } else if (cfg.info == InfoCase::SharedBelief) {
        q_common = analytics::q_shared_of_price(par, cfg.belief, cfg.price);
    }

    const int nb = cfg.batches;
    const double span = cfg.horizon - cfg.warmup;
    const double batch_len = span / nb;
    std::vector<std::uint64_t> arrivals(nb, 0), joined(nb, 0);
    std::vector<double> sojourn_sum(nb, 0.0), welfare_sum(nb, 0.0), busy_sum(nb, 0.0);

    double t = 0.0;
    double server_free = 0.0;
    int hot_batches = 0;
    int last_checked_batch = -1;

    while (true) {
        t += interarrival(rng);
        if (t >= cfg.horizon) break;

        bool joins;
        double belief_draw = kNan;
        if (cfg.info == InfoCase::PrivateBelief) {
            belief_draw = cfg.belief.sample(rng);
            const double q = std::min(xi / belief_draw, 1.0);
            joins = q >= 1.0 || unit(rng) < q;
        } else {
            joins = q_common >= 1.0 || (q_common > 0.0 && unit(rng) < q_common);
        }

        double sojourn = kNan;
        double svc = 0.0;
        if (joins) {
            svc = service(rng);
            const double start = std::max(t, server_free);
            server_free = start + svc;
            sojourn = server_free - t;
        }
        if (sink != nullptr) {
            sink->on_arrival(t, belief_draw, joins, sojourn);
        }

        if (t >= cfg.warmup) {
            const int b = std::min(static_cast<int>((t - cfg.warmup) / batch_len), nb - 1);
            ++arrivals[b];
            if (joins) {
                ++joined[b];
                sojourn_sum[b] += sojourn;
                welfare_sum[b] += par.R - par.C * sojourn;
                busy_sum[b] += svc;
            }
            // sustained-saturation tripwire, checked once per completed batch
            if (b - 1 > last_checked_batch) {
                for (int k = last_checked_batch + 1; k <= b - 1; ++k) {
                    if (busy_sum[k] / batch_len >= 0.999) {
                        if (++hot_batches >= 3) {
                            throw UnstableEffective(
                                "utilization >= 0.999 for three consecutive batches");
                        }
                    } else {
                        hot_batches = 0;
                    }
                }
                last_checked_batch = b - 1;
            }
        }
    }

    SimReport report;
    std::vector<double> frac, wait, rev, wel;
    for (int b = 0; b < nb; ++b) {
        report.n_arrivals += arrivals[b];
        report.n_joined += joined[b];
        if (arrivals[b] > 0) {
            frac.push_back(static_cast<double>(joined[b]) / arrivals[b]);
        }
        if (joined[b] > 0) {
            wait.push_back(sojourn_sum[b] / joined[b]);
        }
        rev.push_back(cfg.price * joined[b] / batch_len);
        wel.push_back(welfare_sum[b] / batch_len);
    }
    report.join_fraction = batch_estimate(frac);
    report.mean_wait = batch_estimate(wait);
    report.revenue_rate = batch_estimate(rev);
    report.welfare_rate = batch_estimate(wel);
    if (report.n_arrivals > 0) {
        report.join_fraction.value =
            static_cast<double>(report.n_joined) / report.n_arrivals;
    }
    if (report.n_joined > 0) {
        double total_sojourn = 0.0;
        for (double s : sojourn_sum) total_sojourn += s;
        report.mean_wait.value = total_sojourn / report.n_joined;
    }
    report.revenue_rate.value = cfg.price * report.n_joined / span;
    double total_welfare = 0.0;
    for (double w : welfare_sum) total_welfare += w;
    report.welfare_rate.value = total_welfare / span;
    return report;
}

ValidationSummary validate_against_analytics(const SimConfig& cfg) {
    ValidationSummary summary;
    summary.report = run(cfg);
    const SimReport& rep = summary.report;
    const SystemParams& par = cfg.params;

    double join_expected = 0.0;
    switch (cfg.info) {
        case InfoCase::Classical:
            join_expected = analytics::q_classical_of_price(par, cfg.price);
            break;
        case InfoCase::SharedBelief:
            join_expected = analytics::q_shared_of_price(par, cfg.belief, cfg.price);
            break;
        case InfoCase::PrivateBelief:
            join_expected = analytics::mean_private_joining(par, cfg.belief, cfg.price);
            break;
    }
    const double rev_expected = analytics::revenue(par, cfg.belief, cfg.info, cfg.price);
    const double wel_expected = analytics::welfare(par, cfg.belief, cfg.info, cfg.price,
                                                   analytics::WelfareVariant::Physical);

    auto check = [&](std::string name, const Estimate& est, double analytic) {
        const double slack = 3.0 * est.half_width + 1e-12;
        summary.checks.push_back({std::move(name), est.value, analytic, est.half_width,
                                  std::abs(est.value - analytic) <= slack});
    };
    check("join_fraction", rep.join_fraction, join_expected);
    if (rep.n_joined > 0) {
        check("mean_wait", rep.mean_wait,
              analytics::waiting_time(par, par.lambda * join_expected));
    }
    check("revenue_rate", rep.revenue_rate, rev_expected);
    check("welfare_rate", rep.welfare_rate, wel_expected);
    summary.all_pass = std::all_of(summary.checks.begin(), summary.checks.end(),
                                   [](const MetricCheck& c) { return c.pass; });
    return summary;
}

}  // namespace beliefq::sim
