#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "poa_arena/authority.hpp"
#include "poa_arena/types.hpp"

namespace poa_arena {

class World;
struct FinalityTracker;

struct MetricsReport {
    Protocol protocol = Protocol::kPoa;
    std::uint64_t seed = 0;
    double tps = 0.0;
    std::uint64_t blocks_proposed = 0;
    std::uint64_t blocks_canonical = 0;
    std::uint64_t fork_count = 0;
    std::uint64_t max_reorg_depth = 0;
    double time_to_finality_ms = 0.0;
    double agreement = 1.0;
    std::uint64_t messages_sent = 0;
    std::uint64_t messages_dropped = 0;
    std::uint64_t safety_violations = 0;
    std::vector<ReputationEntry> reputation_final;  // POA only
    double fees_collected = 0.0;
    std::uint64_t canonical_payload = 0;
};

/// Conflicting-finality count over a set of trackers: every (pair, height)
/// whose first finalized blocks differ, plus every finalized block a node
/// later reverted. Zero means no node ever finalized something it or a peer
/// contradicted.
std::uint64_t check_safety(std::span<const FinalityTracker* const> trackers);

/// Node whose view the chain metrics are read from: the honest node storing
/// the most blocks, lowest id first.
std::uint32_t reference_node(const World& world);

MetricsReport compute_metrics(const World& world);

}  // namespace poa_arena
