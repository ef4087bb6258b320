#pragma once

#include <cstdint>
#include <vector>

#include "poa_arena/rng.hpp"
#include "poa_arena/types.hpp"

namespace poa_arena {

struct LinkModel {
    SimTime base_latency = 100;
    SimTime jitter = 0;  // half-width of uniform jitter
    double drop_probability = 0.0;
};

/// Messages between different groups sent within [from, until) are dropped.
/// Nodes listed in no group reach everyone.
struct PartitionSpec {
    std::vector<std::vector<NodeId>> groups;
    SimTime from = 0;
    SimTime until = 0;
};

enum class SendOutcome { kScheduled, kPartitionDrop, kRandomDrop };

struct MessageCounters {
    std::uint64_t sent = 0;
    std::uint64_t scheduled = 0;
    std::uint64_t partition_dropped = 0;
    std::uint64_t random_dropped = 0;

    [[nodiscard]] std::uint64_t dropped() const noexcept { return partition_dropped + random_dropped; }
};

/// Link layer: decides the fate of each point-to-point message and samples
/// its latency from a dedicated stream.
class Network {
public:
    Network(LinkModel link, std::vector<PartitionSpec> partitions, std::uint64_t seed);

    [[nodiscard]] bool separated(NodeId a, NodeId b, SimTime t) const noexcept;

    struct Decision {
        SendOutcome outcome = SendOutcome::kScheduled;
        SimTime latency = 0;
    };

    /// Counts the message and decides it. Partition check first, then the
    /// random drop, then a latency draw base + U{-jitter..jitter} clamped at 0.
    Decision send(NodeId from, NodeId to, SimTime now);

    [[nodiscard]] const LinkModel& link() const noexcept { return link_; }
    [[nodiscard]] const MessageCounters& counters() const noexcept { return counters_; }

private:
    LinkModel link_;
    std::vector<PartitionSpec> partitions_;
    Xoshiro256 rng_;
    MessageCounters counters_;
};

}  // namespace poa_arena
