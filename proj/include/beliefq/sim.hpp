#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "beliefq/model.hpp"

namespace beliefq::sim {

enum class ServiceDist { Exponential, Deterministic, Lognormal };

const char* to_string(ServiceDist d);

struct SimConfig {
    SystemParams params;
    BeliefDistribution belief;
    InfoCase info = InfoCase::PrivateBelief;
    double price = 0.0;
    double horizon = 1e5;  // simulated time units
    double warmup = 0.0;   // discarded initial span
    std::uint64_t seed = 1;
    ServiceDist service = ServiceDist::Exponential;
    int batches = 30;  // batch-means windows over the measured span
};

struct Estimate {
    double value = 0.0;
    double half_width = 0.0;  // 95% batch-means confidence half-width
};

struct SimReport {
    std::uint64_t n_arrivals = 0;  // post-warmup
    std::uint64_t n_joined = 0;
    Estimate join_fraction;
    Estimate mean_wait;  // sojourn: waiting plus service
    Estimate revenue_rate;
    Estimate welfare_rate;  // sum of (R - C * sojourn) per unit time
};

/// Per-arrival observer; sojourn is NaN for customers who balk.
struct TraceSink {
    virtual ~TraceSink() = default;
    virtual void on_arrival(double time, double belief, bool joined, double sojourn) = 0;
};

/// FCFS single-server run: Poisson(lambda) arrivals, joining per the selected
/// information case (private draws one belief per customer), service sampled
/// from the configured distribution. Deterministic per seed. Throws
/// UnstableEffective when measured utilization stays at 0.999+ for three
/// consecutive batches.
SimReport run(const SimConfig& config, TraceSink* sink = nullptr);

struct MetricCheck {
    std::string name;
    double simulated;
    double analytic;
    double half_width;
    bool pass;  // |simulated - analytic| <= 3 half-widths
};

struct ValidationSummary {
    SimReport report;
    std::vector<MetricCheck> checks;
    bool all_pass = false;
};

/// Runs the simulator and compares join fraction, mean sojourn, revenue rate
/// and physical welfare rate against the analytic values.
ValidationSummary validate_against_analytics(const SimConfig& config);

}  // namespace beliefq::sim
