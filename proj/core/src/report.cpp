#include "poa_arena/report.hpp"

#include <charconv>
#include <cmath>

#include <json.hpp>

namespace poa_arena {

using nlohmann::json;

std::string format_double(double x) {
    if (x == 0.0) return "0";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

namespace {

json metrics_object(const MetricsReport& m) {
    json j;
    j["protocol"] = std::string(to_string(m.protocol));
    j["seed"] = m.seed;
    j["tps"] = m.tps;
    j["blocks_proposed"] = m.blocks_proposed;
    j["blocks_canonical"] = m.blocks_canonical;
    j["fork_count"] = m.fork_count;
    j["max_reorg_depth"] = m.max_reorg_depth;
    j["time_to_finality_ms"] = m.time_to_finality_ms;
    j["agreement"] = m.agreement;
    j["messages_sent"] = m.messages_sent;
    j["messages_dropped"] = m.messages_dropped;
    j["safety_violations"] = m.safety_violations;
    j["fees_collected"] = m.fees_collected;
    if (m.protocol == Protocol::kPoa) {
        json rep = json::array();
        for (const auto& e : m.reputation_final) {
            rep.push_back({{"sealer", e.id.label}, {"index", e.id.index}, {"reputation", e.reputation}, {"active", e.active}});
        }
        j["reputation_final"] = rep;
    }
    return j;
}

}  // namespace

std::string report_json(const MetricsReport& m) { return metrics_object(m).dump(2) + "\n"; }

std::string csv_header() {
    return "protocol,seed,tps,blocks_proposed,blocks_canonical,fork_count,max_reorg_depth,time_to_finality_ms,"
           "agreement,messages_sent,messages_dropped,safety_violations,fees_collected\n";
}

std::string csv_row(const MetricsReport& m) {
    std::string s;
    s += to_string(m.protocol);
    s += ',' + std::to_string(m.seed);
    s += ',' + format_double(m.tps);
    s += ',' + std::to_string(m.blocks_proposed);
    s += ',' + std::to_string(m.blocks_canonical);
    s += ',' + std::to_string(m.fork_count);
    s += ',' + std::to_string(m.max_reorg_depth);
    s += ',' + format_double(m.time_to_finality_ms);
    s += ',' + format_double(m.agreement);
    s += ',' + std::to_string(m.messages_sent);
    s += ',' + std::to_string(m.messages_dropped);
    s += ',' + std::to_string(m.safety_violations);
    s += ',' + format_double(m.fees_collected);
    s += '\n';
    return s;
}

std::string comparison_json(const std::vector<ComparisonRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows) {
        json summary;
        for (const auto& s : r.metrics) summary[s.name] = {{"mean", s.mean}, {"stddev", s.stddev}};
        json runs = json::array();
        for (const auto& m : r.runs) runs.push_back(metrics_object(m));
        arr.push_back({{"config_index", r.config_index},
                       {"protocol", std::string(to_string(r.protocol))},
                       {"base_seed", r.base_seed},
                       {"repetitions", r.repetitions},
                       {"summary", summary},
                       {"runs", runs}});
    }
    return json{{"rows", arr}}.dump(2) + "\n";
}

std::string comparison_csv(const std::vector<ComparisonRow>& rows) {
    std::string out = csv_header();
    for (const auto& r : rows) {
        for (const auto& m : r.runs) out += csv_row(m);
    }
    return out;
}

}  // namespace poa_arena
