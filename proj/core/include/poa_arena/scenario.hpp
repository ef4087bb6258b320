#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "poa_arena/metrics.hpp"
#include "poa_arena/scenario_config.hpp"

namespace poa_arena {

struct RunOutput {
    MetricsReport metrics;
    std::uint64_t event_log_digest = 0;
    std::uint64_t events_dispatched = 0;
};

/// Builds the world, runs it to config.duration and measures it.
/// `event_log`, when given, receives one line per dispatched event.
RunOutput run_scenario_full(const ScenarioConfig& config, std::ostream* event_log = nullptr);

MetricsReport run_scenario(const ScenarioConfig& config);

struct MetricSummary {
    std::string name;
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation; 0 for a single run
};

struct ComparisonRow {
    std::size_t config_index = 0;
    Protocol protocol = Protocol::kPoa;
    std::uint64_t base_seed = 0;
    std::uint32_t repetitions = 0;
    std::vector<MetricSummary> metrics;  // fixed order, see metric_names()
    std::vector<MetricsReport> runs;     // ordered by repetition index

    [[nodiscard]] const MetricSummary& metric(const std::string& name) const;
};

/// Scalar metrics aggregated by compare, in emission order.
const std::vector<std::string>& metric_names();
double metric_value(const MetricsReport& m, const std::string& name);

/// Runs config i with seeds seed+0 .. seed+repetitions-1. Runs may execute on
/// up to `threads` workers (0 = POA_ARENA_THREADS or hardware concurrency);
/// the table never depends on the worker count.
std::vector<ComparisonRow> compare(const std::vector<ScenarioConfig>& configs, std::uint32_t repetitions,
                                   unsigned threads = 0);

/// Worker cap from POA_ARENA_THREADS, falling back to hardware concurrency.
unsigned default_thread_count();

}  // namespace poa_arena
