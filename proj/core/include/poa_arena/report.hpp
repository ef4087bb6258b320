#pragma once

#include <string>
#include <vector>

#include "poa_arena/metrics.hpp"
#include "poa_arena/scenario.hpp"

namespace poa_arena {

/// Shortest round-trip decimal form; identical across runs and platforms.
std::string format_double(double x);

/// Full-fidelity JSON object with alphabetically ordered keys.
std::string report_json(const MetricsReport& m);

/// Fixed column order: protocol, seed, tps, blocks_proposed, blocks_canonical,
/// fork_count, max_reorg_depth, time_to_finality_ms, agreement, messages_sent,
/// messages_dropped, safety_violations, fees_collected.
std::string csv_header();
std::string csv_row(const MetricsReport& m);

/// Comparison table. JSON holds per-row mean/stddev plus the individual runs;
/// CSV holds one line per run in (config, repetition) order.
std::string comparison_json(const std::vector<ComparisonRow>& rows);
std::string comparison_csv(const std::vector<ComparisonRow>& rows);

}  // namespace poa_arena
