#include "poa_arena/catalog.hpp"

namespace poa_arena {

namespace {

constexpr std::uint32_t kSealers = 7;

ScenarioConfig base_poa() {
    ScenarioConfig c;
    c.protocol = Protocol::kPoa;
    c.node_count = kSealers;
    c.slot_duration = 1000;
    c.duration = 500 * c.slot_duration;
    c.link = LinkModel{100, 20, 0.0};
    c.seed = 1;
    c.finality_depth = 6;
    return c;
}

std::vector<NodeId> ids(std::initializer_list<std::uint32_t> v) {
    std::vector<NodeId> out;
    for (auto x : v) out.push_back(NodeId{x});
    return out;
}

ScenarioConfig equivocators(std::uint32_t p) {
    ScenarioConfig c = base_poa();
    c.behaviors.resize(c.node_count);
    for (std::uint32_t i = c.node_count - p; i < c.node_count; ++i) c.behaviors[i].kind = BehaviorKind::kEquivocator;
    return c;
}

}  // namespace

ScenarioConfig sybil_clone_config(std::uint32_t controlled) {
    ScenarioConfig c = base_poa();
    c.node_count = 1 + (kSealers - controlled);
    c.behaviors.resize(c.node_count);
    c.behaviors[0].kind = BehaviorKind::kSybilCloner;
    for (std::uint32_t s = 0; s < controlled; ++s) c.behaviors[0].controlled.push_back(s);
    std::vector<NodeId> rest;
    for (std::uint32_t i = 1; i < c.node_count; ++i) rest.push_back(NodeId{i});
    c.partitions.push_back(PartitionSpec{{{NodeId{0}}, rest}, c.duration / 3, 2 * c.duration / 3});
    return normalize(std::move(c));
}

std::vector<AttackPreset> attack_catalog() {
    std::vector<AttackPreset> out;

    out.push_back({"equivocation-minority",
                   "3 of 7 sealers equivocate (the largest p with p < n/2); no partition",
                   normalize(equivocators(max_byzantine(kSealers)))});

    ScenarioConfig majority = equivocators(max_byzantine(kSealers) + 1);
    // Keeps the two honest audiences apart so the coalition's lineages never merge.
    majority.partitions.push_back(PartitionSpec{{ids({0, 1}), ids({2})}, 0, majority.duration});
    out.push_back({"equivocation-majority",
                   "4 of 7 sealers equivocate while the honest nodes are split into two groups",
                   normalize(std::move(majority))});

    out.push_back({"sybil-clone", "one operator controls 4 of 7 sealer identities and is cut off mid-run",
                   sybil_clone_config(4)});

    ScenarioConfig censor = base_poa();
    censor.behaviors.resize(censor.node_count);
    censor.behaviors[6].kind = BehaviorKind::kCensor;
    out.push_back({"censorship", "one sealer seals empty blocks", normalize(std::move(censor))});

    ScenarioConfig heal = base_poa();
    heal.partitions.push_back(PartitionSpec{{ids({0, 1, 2}), ids({3, 4, 5, 6})}, heal.duration / 4, heal.duration / 2});
    out.push_back({"partition-heal", "3/4 split for the second quarter of the run, then rejoin",
                   normalize(std::move(heal))});
    return out;
}

std::optional<AttackPreset> find_preset(std::string_view name) {
    for (auto& p : attack_catalog()) {
        if (p.name == name) return p;
    }
    return std::nullopt;
}

}  // namespace poa_arena
