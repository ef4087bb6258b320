#include "poa_arena/config_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <json.hpp>

namespace poa_arena {

using nlohmann::json;

std::string_view to_string(BehaviorKind k) noexcept {
    switch (k) {
        case BehaviorKind::kHonest: return "HONEST";
        case BehaviorKind::kEquivocator: return "EQUIVOCATOR";
        case BehaviorKind::kCensor: return "CENSOR";
        case BehaviorKind::kSybilCloner: return "SYBIL_CLONER";
    }
    return "UNKNOWN";
}

std::string_view to_string(Protocol p) noexcept {
    switch (p) {
        case Protocol::kPoa: return "POA";
        case Protocol::kPow: return "POW";
        case Protocol::kPos: return "POS";
    }
    return "UNKNOWN";
}

std::uint32_t ScenarioConfig::sealer_count() const noexcept {
    std::uint32_t n = 0;
    for (const auto& r : roles) n += static_cast<std::uint32_t>(r.sealers.size());
    return n;
}

double ScenarioConfig::effective_difficulty() const noexcept {
    if (difficulty > 0.0) return difficulty;
    double total = 0.0;
    for (const auto& r : roles) total += r.hashrate;
    return total * static_cast<double>(slot_duration);
}

std::uint64_t ScenarioConfig::slot_count() const noexcept {
    if (slot_duration == 0) return 0;
    return (duration + slot_duration - 1) / slot_duration;
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError(path + ": " + what);
}

void check_keys(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
    if (!obj.is_object()) fail(path.empty() ? "<root>" : path, "expected an object");
    for (const auto& [key, value] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            fail(path.empty() ? key : path + "." + key, "unknown key");
        }
    }
}

std::string join(const std::string& path, std::string_view key) {
    return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

std::uint64_t get_uint(const json& v, const std::string& path) {
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
        fail(path, "expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

std::uint32_t get_u32(const json& v, const std::string& path) {
    const auto x = get_uint(v, path);
    if (x > 0xffffffffULL) fail(path, "value out of range");
    return static_cast<std::uint32_t>(x);
}

std::int64_t get_int(const json& v, const std::string& path) {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
        fail(path, "value out of range");
    }
    return v.get<std::int64_t>();
}

double get_real(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(path, "expected a finite number");
    return x;
}

std::vector<std::uint32_t> get_indices(const json& v, const std::string& path) {
    if (!v.is_array()) fail(path, "expected an array of integers");
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(get_u32(v[i], index(path, i)));
    return out;
}

Protocol parse_protocol(const json& v, const std::string& path) {
    if (!v.is_string()) fail(path, "expected one of POA, POW, POS");
    const auto s = v.get<std::string>();
    if (s == "POA") return Protocol::kPoa;
    if (s == "POW") return Protocol::kPow;
    if (s == "POS") return Protocol::kPos;
    fail(path, "unknown protocol '" + s + "'");
}

BehaviorKind parse_kind(const json& v, const std::string& path) {
    if (!v.is_string()) fail(path, "expected a behavior name");
    const auto s = v.get<std::string>();
    for (auto k : {BehaviorKind::kHonest, BehaviorKind::kEquivocator, BehaviorKind::kCensor, BehaviorKind::kSybilCloner}) {
        if (s == to_string(k)) return k;
    }
    fail(path, "unknown behavior '" + s + "'");
}

std::vector<NodeRole> parse_roles(const json& v, Protocol protocol) {
    const std::string path = "roles";
    if (!v.is_array()) fail(path, "expected an array");
    std::vector<NodeRole> roles;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string p = index(path, i);
        const json& r = v[i];
        check_keys(r, p, {"sealers", "hashrate", "stake"});
        if (r.size() != 1) fail(p, "expected exactly one of sealers, hashrate, stake");
        NodeRole role;
        if (r.contains("sealers")) {
            if (protocol != Protocol::kPoa) fail(join(p, "sealers"), "sealer roles require protocol POA");
            role.sealers = get_indices(r["sealers"], join(p, "sealers"));
        } else if (r.contains("hashrate")) {
            if (protocol != Protocol::kPow) fail(join(p, "hashrate"), "hashrate roles require protocol POW");
            role.hashrate = get_real(r["hashrate"], join(p, "hashrate"));
        } else {
            if (protocol != Protocol::kPos) fail(join(p, "stake"), "stake roles require protocol POS");
            role.stake = get_real(r["stake"], join(p, "stake"));
        }
        roles.push_back(std::move(role));
    }
    return roles;
}

std::vector<PartitionSpec> parse_partitions(const json& v) {
    const std::string path = "partitions";
    if (!v.is_array()) fail(path, "expected an array");
    std::vector<PartitionSpec> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string p = index(path, i);
        check_keys(v[i], p, {"groups", "from_ms", "until_ms"});
        PartitionSpec spec;
        if (!v[i].contains("groups")) fail(join(p, "groups"), "missing required key");
        const json& groups = v[i]["groups"];
        if (!groups.is_array()) fail(join(p, "groups"), "expected an array of arrays");
        for (std::size_t g = 0; g < groups.size(); ++g) {
            std::vector<NodeId> group;
            for (auto idx : get_indices(groups[g], index(join(p, "groups"), g))) group.push_back(NodeId{idx});
            spec.groups.push_back(std::move(group));
        }
        if (v[i].contains("from_ms")) spec.from = get_uint(v[i]["from_ms"], join(p, "from_ms"));
        if (v[i].contains("until_ms")) spec.until = get_uint(v[i]["until_ms"], join(p, "until_ms"));
        out.push_back(std::move(spec));
    }
    return out;
}

}  // namespace

ScenarioConfig normalize(ScenarioConfig c) {
    if (c.node_count == 0) throw ConfigError("node_count: must be at least 1");
    const std::uint32_t n = c.node_count;

    if (c.behaviors.empty()) c.behaviors.resize(n);
    if (c.behaviors.size() != n) throw ConfigError("behaviors: expected one entry per node");
    for (std::uint32_t i = 0; i < n; ++i) {
        auto& b = c.behaviors[i];
        const std::string p = "behaviors[node=" + std::to_string(i) + "]";
        if (b.kind == BehaviorKind::kSybilCloner) {
            if (c.protocol != Protocol::kPoa) throw ConfigError(p + ".kind: SYBIL_CLONER requires protocol POA");
            std::sort(b.controlled.begin(), b.controlled.end());
            if (b.controlled.size() < 2 ||
                std::adjacent_find(b.controlled.begin(), b.controlled.end()) != b.controlled.end()) {
                throw ConfigError(p + ".controlled: SYBIL_CLONER needs at least two distinct sealer identities");
            }
        } else if (!b.controlled.empty()) {
            throw ConfigError(p + ".controlled: only SYBIL_CLONER controls identities");
        }
        if (b.kind == BehaviorKind::kEquivocator && c.protocol == Protocol::kPow) {
            throw ConfigError(p + ".kind: EQUIVOCATOR is not defined under POW");
        }
    }

    if (c.roles.empty()) {
        c.roles.resize(n);
        if (c.protocol == Protocol::kPoa) {
            std::set<std::uint32_t> taken;
            for (std::uint32_t i = 0; i < n; ++i) {
                const auto& b = c.behaviors[i];
                if (b.kind == BehaviorKind::kSybilCloner) {
                    c.roles[i].sealers = b.controlled;
                    taken.insert(b.controlled.begin(), b.controlled.end());
                }
            }
            std::uint32_t next = 0;
            for (std::uint32_t i = 0; i < n; ++i) {
                if (c.behaviors[i].kind == BehaviorKind::kSybilCloner) continue;
                while (taken.contains(next)) ++next;
                c.roles[i].sealers = {next++};
            }
        }
    }
    if (c.roles.size() != n) throw ConfigError("roles: expected one entry per node");

    switch (c.protocol) {
        case Protocol::kPoa: {
            std::vector<std::uint32_t> all;
            for (std::uint32_t i = 0; i < n; ++i) {
                auto& s = c.roles[i].sealers;
                std::sort(s.begin(), s.end());
                if (s.empty()) throw ConfigError("roles[" + std::to_string(i) + "].sealers: every POA node holds a sealer identity");
                if (c.behaviors[i].kind == BehaviorKind::kSybilCloner && s != c.behaviors[i].controlled) {
                    throw ConfigError("roles[" + std::to_string(i) + "].sealers: must equal the cloner's controlled identities");
                }
                if (c.behaviors[i].kind != BehaviorKind::kSybilCloner && s.size() != 1) {
                    throw ConfigError("roles[" + std::to_string(i) + "].sealers: only SYBIL_CLONER nodes hold several identities");
                }
                all.insert(all.end(), s.begin(), s.end());
            }
            std::sort(all.begin(), all.end());
            for (std::uint32_t k = 0; k < all.size(); ++k) {
                if (all[k] != k) throw ConfigError("roles: sealer indices must cover 0..n-1 exactly once");
            }
            break;
        }
        case Protocol::kPow:
            for (std::uint32_t i = 0; i < n; ++i) {
                if (!(c.roles[i].hashrate > 0.0)) throw ConfigError("roles[" + std::to_string(i) + "].hashrate: must be positive");
            }
            if (c.difficulty < 0.0) throw ConfigError("difficulty: must be positive");
            break;
        case Protocol::kPos:
            for (std::uint32_t i = 0; i < n; ++i) {
                if (!(c.roles[i].stake > 0.0)) throw ConfigError("roles[" + std::to_string(i) + "].stake: must be positive");
            }
            break;
    }
    if (c.protocol != Protocol::kPoa) {
        for (auto& r : c.roles) r.sealers.clear();
    }

    if (c.slot_duration < 1) throw ConfigError("slot_duration_ms: must be at least 1");
    if (c.finality_depth < 1) throw ConfigError("finality_depth: must be at least 1");
    if (!(c.link.drop_probability >= 0.0 && c.link.drop_probability < 1.0)) {
        throw ConfigError("link.drop_probability: must lie in [0, 1)");
    }
    if (!(c.fee_per_payload >= 0.0)) throw ConfigError("fee_per_payload: must be non-negative");

    for (std::size_t i = 0; i < c.partitions.size(); ++i) {
        const auto& spec = c.partitions[i];
        const std::string p = "partitions[" + std::to_string(i) + "]";
        if (spec.until < spec.from) throw ConfigError(p + ".until_ms: must not precede from_ms");
        std::set<std::uint32_t> seen;
        for (const auto& g : spec.groups) {
            for (auto id : g) {
                if (id.value >= n) throw ConfigError(p + ".groups: node " + std::to_string(id.value) + " does not exist");
                if (!seen.insert(id.value).second) {
                    throw ConfigError(p + ".groups: node " + std::to_string(id.value) + " appears in two groups");
                }
            }
        }
    }
    return c;
}

ScenarioConfig parse_config(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text.begin(), json_text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("<document>: malformed JSON: ") + e.what());
    }
    check_keys(doc, "",
               {"protocol", "node_count", "roles", "behaviors", "slot_duration_ms", "difficulty", "link", "partitions",
                "duration_ms", "seed", "finality_depth", "reputation", "fee_per_payload", "payload_per_block"});

    ScenarioConfig c;
    if (!doc.contains("protocol")) fail("protocol", "missing required key");
    c.protocol = parse_protocol(doc["protocol"], "protocol");
    if (!doc.contains("node_count")) fail("node_count", "missing required key");
    c.node_count = get_u32(doc["node_count"], "node_count");
    if (c.node_count == 0) fail("node_count", "must be at least 1");

    if (doc.contains("roles")) {
        c.roles = parse_roles(doc["roles"], c.protocol);
        if (c.roles.size() != c.node_count) fail("roles", "expected node_count entries");
    }
    if (doc.contains("behaviors")) {
        const json& arr = doc["behaviors"];
        if (!arr.is_array()) fail("behaviors", "expected an array");
        c.behaviors.resize(c.node_count);
        std::set<std::uint32_t> seen;
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string p = index("behaviors", i);
            check_keys(arr[i], p, {"node", "kind", "controlled"});
            if (!arr[i].contains("node")) fail(join(p, "node"), "missing required key");
            if (!arr[i].contains("kind")) fail(join(p, "kind"), "missing required key");
            const auto node = get_u32(arr[i]["node"], join(p, "node"));
            if (node >= c.node_count) fail(join(p, "node"), "references a node that does not exist");
            if (!seen.insert(node).second) fail(join(p, "node"), "node listed twice");
            NodeBehavior b;
            b.kind = parse_kind(arr[i]["kind"], join(p, "kind"));
            if (arr[i].contains("controlled")) b.controlled = get_indices(arr[i]["controlled"], join(p, "controlled"));
            c.behaviors[node] = std::move(b);
        }
    }
    if (doc.contains("slot_duration_ms")) c.slot_duration = get_uint(doc["slot_duration_ms"], "slot_duration_ms");
    if (doc.contains("difficulty")) {
        if (c.protocol != Protocol::kPow) fail("difficulty", "only meaningful under protocol POW");
        c.difficulty = get_real(doc["difficulty"], "difficulty");
        if (!(c.difficulty > 0.0)) fail("difficulty", "must be positive");
    }
    if (doc.contains("link")) {
        const json& l = doc["link"];
        check_keys(l, "link", {"base_latency_ms", "jitter_ms", "drop_probability"});
        if (l.contains("base_latency_ms")) c.link.base_latency = get_uint(l["base_latency_ms"], "link.base_latency_ms");
        if (l.contains("jitter_ms")) c.link.jitter = get_uint(l["jitter_ms"], "link.jitter_ms");
        if (l.contains("drop_probability")) c.link.drop_probability = get_real(l["drop_probability"], "link.drop_probability");
    }
    if (doc.contains("partitions")) c.partitions = parse_partitions(doc["partitions"]);
    if (doc.contains("duration_ms")) c.duration = get_uint(doc["duration_ms"], "duration_ms");
    if (doc.contains("seed")) c.seed = get_uint(doc["seed"], "seed");
    if (doc.contains("finality_depth")) c.finality_depth = get_u32(doc["finality_depth"], "finality_depth");
    if (doc.contains("reputation")) {
        const json& r = doc["reputation"];
        if (c.protocol != Protocol::kPoa) fail("reputation", "only meaningful under protocol POA");
        check_keys(r, "reputation",
                   {"in_turn_seal", "out_of_turn_seal", "missed_slot", "invalid_block", "equivocation", "ejection_threshold"});
        auto& d = c.reputation_deltas;
        if (r.contains("in_turn_seal")) d.in_turn_seal = get_int(r["in_turn_seal"], "reputation.in_turn_seal");
        if (r.contains("out_of_turn_seal")) d.out_of_turn_seal = get_int(r["out_of_turn_seal"], "reputation.out_of_turn_seal");
        if (r.contains("missed_slot")) d.missed_slot = get_int(r["missed_slot"], "reputation.missed_slot");
        if (r.contains("invalid_block")) d.invalid_block = get_int(r["invalid_block"], "reputation.invalid_block");
        if (r.contains("equivocation")) d.equivocation = get_int(r["equivocation"], "reputation.equivocation");
        if (r.contains("ejection_threshold")) {
            c.ejection_threshold = get_int(r["ejection_threshold"], "reputation.ejection_threshold");
        }
        for (auto [name, value] : {std::pair{"missed_slot", d.missed_slot}, std::pair{"invalid_block", d.invalid_block},
                                   std::pair{"equivocation", d.equivocation}}) {
            if (value >= 0) fail(std::string("reputation.") + name, "misbehaviour deltas must be negative");
        }
    }
    if (doc.contains("fee_per_payload")) c.fee_per_payload = get_real(doc["fee_per_payload"], "fee_per_payload");
    if (doc.contains("payload_per_block")) c.payload_per_block = get_uint(doc["payload_per_block"], "payload_per_block");

    return normalize(std::move(c));
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path.string() + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const ScenarioConfig& c) {
    json doc;
    doc["protocol"] = std::string(to_string(c.protocol));
    doc["node_count"] = c.node_count;
    json roles = json::array();
    for (const auto& r : c.roles) {
        switch (c.protocol) {
            case Protocol::kPoa: roles.push_back({{"sealers", r.sealers}}); break;
            case Protocol::kPow: roles.push_back({{"hashrate", r.hashrate}}); break;
            case Protocol::kPos: roles.push_back({{"stake", r.stake}}); break;
        }
    }
    doc["roles"] = roles;
    json behaviors = json::array();
    for (std::size_t i = 0; i < c.behaviors.size(); ++i) {
        const auto& b = c.behaviors[i];
        if (b.kind == BehaviorKind::kHonest) continue;
        json e = {{"node", i}, {"kind", std::string(to_string(b.kind))}};
        if (!b.controlled.empty()) e["controlled"] = b.controlled;
        behaviors.push_back(e);
    }
    doc["behaviors"] = behaviors;
    doc["slot_duration_ms"] = c.slot_duration;
    if (c.protocol == Protocol::kPow && c.difficulty > 0.0) doc["difficulty"] = c.difficulty;
    doc["link"] = {{"base_latency_ms", c.link.base_latency},
                   {"jitter_ms", c.link.jitter},
                   {"drop_probability", c.link.drop_probability}};
    json parts = json::array();
    for (const auto& p : c.partitions) {
        json groups = json::array();
        for (const auto& g : p.groups) {
            json ids = json::array();
            for (auto id : g) ids.push_back(id.value);
            groups.push_back(ids);
        }
        parts.push_back({{"groups", groups}, {"from_ms", p.from}, {"until_ms", p.until}});
    }
    doc["partitions"] = parts;
    doc["duration_ms"] = c.duration;
    doc["seed"] = c.seed;
    doc["finality_depth"] = c.finality_depth;
    if (c.protocol == Protocol::kPoa) {
        const auto& d = c.reputation_deltas;
        doc["reputation"] = {{"in_turn_seal", d.in_turn_seal},     {"out_of_turn_seal", d.out_of_turn_seal},
                             {"missed_slot", d.missed_slot},       {"invalid_block", d.invalid_block},
                             {"equivocation", d.equivocation},     {"ejection_threshold", c.ejection_threshold}};
    }
    doc["fee_per_payload"] = c.fee_per_payload;
    doc["payload_per_block"] = c.payload_per_block;
    return doc.dump(2) + "\n";
}

}  // namespace poa_arena
