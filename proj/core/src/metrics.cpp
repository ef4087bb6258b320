#include "poa_arena/metrics.hpp"

#include <algorithm>

#include "poa_arena/world.hpp"

namespace poa_arena {

std::uint64_t check_safety(std::span<const FinalityTracker* const> trackers) {
    std::uint64_t violations = 0;
    for (const auto* t : trackers) violations += t->reverted;
    for (std::size_t i = 0; i < trackers.size(); ++i) {
        for (std::size_t j = i + 1; j < trackers.size(); ++j) {
            const auto& a = trackers[i]->first_final;
            const auto& b = trackers[j]->first_final;
            const std::size_t common = std::min(a.size(), b.size());
            for (std::size_t h = 0; h < common; ++h) {
                if (a[h] != b[h]) ++violations;
            }
        }
    }
    return violations;
}

std::uint32_t reference_node(const World& world) {
    std::uint32_t best = 0;
    std::size_t best_size = 0;
    bool found = false;
    for (const auto& n : world.nodes()) {
        if (!n.honest()) continue;
        if (!found || n.store.size() > best_size) {
            best = n.id.value;
            best_size = n.store.size();
            found = true;
        }
    }
    return best;
}

namespace {

bool prefix_compatible(const NodeState& a, const NodeState& b) {
    const std::uint64_t h = std::min(a.finality.final_height, b.finality.final_height);
    return a.store.ancestor_at(a.tip, h) == b.store.ancestor_at(b.tip, h);
}

}  // namespace

MetricsReport compute_metrics(const World& world) {
    const auto& cfg = world.config();
    MetricsReport m;
    m.protocol = cfg.protocol;
    m.seed = cfg.seed;
    m.blocks_proposed = world.proposals().size();

    const NodeState& ref = world.node(NodeId{reference_node(world)});
    const auto chain = ref.store.path_from_genesis(ref.tip);
    m.blocks_canonical = chain.size() - 1;
    for (auto d : chain) m.canonical_payload += ref.store.at(d).header.payload_count;
    m.fork_count = ref.store.fork_count();
    m.tps = cfg.duration == 0 ? 0.0
                              : static_cast<double>(m.canonical_payload) / (static_cast<double>(cfg.duration) / 1000.0);
    m.fees_collected = cfg.fee_per_payload * static_cast<double>(m.canonical_payload);

    double total = 0.0;
    std::uint64_t count = 0;
    for (std::uint64_t h = 1; h <= ref.finality.final_height && h < chain.size(); ++h) {
        auto fin = ref.finality.finalized_at.find(chain[h]);
        auto proposed = world.proposal_time(chain[h]);
        if (fin == ref.finality.finalized_at.end() || !proposed) continue;
        total += static_cast<double>(fin->second - *proposed);
        ++count;
    }
    m.time_to_finality_ms = count == 0 ? 0.0 : total / static_cast<double>(count);

    std::vector<const NodeState*> honest;
    for (const auto& n : world.nodes()) {
        if (n.honest()) honest.push_back(&n);
    }
    std::uint64_t pairs = 0;
    std::uint64_t agreeing = 0;
    for (std::size_t i = 0; i < honest.size(); ++i) {
        for (std::size_t j = i + 1; j < honest.size(); ++j) {
            ++pairs;
            if (prefix_compatible(*honest[i], *honest[j])) ++agreeing;
        }
    }
    m.agreement = pairs == 0 ? 1.0 : static_cast<double>(agreeing) / static_cast<double>(pairs);

    std::vector<const FinalityTracker*> trackers;
    for (const auto* n : honest) {
        trackers.push_back(&n->finality);
        m.max_reorg_depth = std::max(m.max_reorg_depth, n->finality.max_reorg_depth);
    }
    m.safety_violations = check_safety(trackers);

    m.messages_sent = world.messages().sent;
    m.messages_dropped = world.messages().dropped();
    if (cfg.protocol == Protocol::kPoa) m.reputation_final = reputation_snapshot(world.authority());
    return m;
}

}  // namespace poa_arena
