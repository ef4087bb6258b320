#include "poa_arena/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <thread>

#include "poa_arena/world.hpp"

namespace poa_arena {

RunOutput run_scenario_full(const ScenarioConfig& config, std::ostream* event_log) {
    World world(normalize(config));
    world.set_event_log(event_log);
    world.run();
    return RunOutput{compute_metrics(world), world.event_log_digest(), world.dispatched()};
}

MetricsReport run_scenario(const ScenarioConfig& config) { return run_scenario_full(config).metrics; }

const std::vector<std::string>& metric_names() {
    static const std::vector<std::string> names{
        "tps",           "blocks_proposed", "blocks_canonical",  "fork_count",        "max_reorg_depth",
        "time_to_finality_ms", "agreement", "messages_sent",     "messages_dropped",  "safety_violations",
        "fees_collected"};
    return names;
}

double metric_value(const MetricsReport& m, const std::string& name) {
    if (name == "tps") return m.tps;
    if (name == "blocks_proposed") return static_cast<double>(m.blocks_proposed);
    if (name == "blocks_canonical") return static_cast<double>(m.blocks_canonical);
    if (name == "fork_count") return static_cast<double>(m.fork_count);
    if (name == "max_reorg_depth") return static_cast<double>(m.max_reorg_depth);
    if (name == "time_to_finality_ms") return m.time_to_finality_ms;
    if (name == "agreement") return m.agreement;
    if (name == "messages_sent") return static_cast<double>(m.messages_sent);
    if (name == "messages_dropped") return static_cast<double>(m.messages_dropped);
    if (name == "safety_violations") return static_cast<double>(m.safety_violations);
    if (name == "fees_collected") return m.fees_collected;
    throw std::invalid_argument("unknown metric: " + name);
}

const MetricSummary& ComparisonRow::metric(const std::string& name) const {
    for (const auto& s : metrics) {
        if (s.name == name) return s;
    }
    throw std::invalid_argument("unknown metric: " + name);
}

unsigned default_thread_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("POA_ARENA_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return hw;
}

std::vector<ComparisonRow> compare(const std::vector<ScenarioConfig>& configs, std::uint32_t repetitions,
                                   unsigned threads) {
    if (repetitions == 0) throw std::invalid_argument("repetitions must be positive");
    std::vector<ScenarioConfig> normalized;
    for (const auto& c : configs) normalized.push_back(normalize(c));

    const std::size_t jobs = normalized.size() * repetitions;
    std::vector<MetricsReport> results(jobs);
    std::vector<std::exception_ptr> errors(jobs);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t j = next++; j < jobs; j = next++) {
            try {
                ScenarioConfig c = normalized[j / repetitions];
                c.seed += j % repetitions;
                results[j] = run_scenario(c);
            } catch (...) {
                errors[j] = std::current_exception();
            }
        }
    };
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(jobs, threads == 0 ? default_thread_count() : threads));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    std::vector<ComparisonRow> rows;
    for (std::size_t i = 0; i < normalized.size(); ++i) {
        ComparisonRow row;
        row.config_index = i;
        row.protocol = normalized[i].protocol;
        row.base_seed = normalized[i].seed;
        row.repetitions = repetitions;
        row.runs.assign(results.begin() + static_cast<std::ptrdiff_t>(i * repetitions),
                        results.begin() + static_cast<std::ptrdiff_t>((i + 1) * repetitions));
        for (const auto& name : metric_names()) {
            double sum = 0.0;
            for (const auto& r : row.runs) sum += metric_value(r, name);
            const double mean = sum / repetitions;
            double sq = 0.0;
            for (const auto& r : row.runs) sq += (metric_value(r, name) - mean) * (metric_value(r, name) - mean);
            const double sd = repetitions > 1 ? std::sqrt(sq / (repetitions - 1)) : 0.0;
            row.metrics.push_back(MetricSummary{name, mean, sd});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace poa_arena
