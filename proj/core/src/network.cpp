#include "poa_arena/network.hpp"

#include <algorithm>
#include <optional>

namespace poa_arena {

namespace {

std::optional<std::size_t> group_of(const PartitionSpec& p, NodeId n) {
    for (std::size_t g = 0; g < p.groups.size(); ++g) {
        if (std::find(p.groups[g].begin(), p.groups[g].end(), n) != p.groups[g].end()) {
            return g;
        }
    }
    return std::nullopt;
}

}  // namespace

Network::Network(LinkModel link, std::vector<PartitionSpec> partitions, std::uint64_t seed)
    : link_(link), partitions_(std::move(partitions)), rng_(seed) {}

bool Network::separated(NodeId a, NodeId b, SimTime t) const noexcept {
    for (const auto& p : partitions_) {
        if (t < p.from || t >= p.until) {
            continue;
        }
        const auto ga = group_of(p, a);
        const auto gb = group_of(p, b);
        if (ga && gb && *ga != *gb) {
            return true;
        }
    }
    return false;
}

Network::Decision Network::send(NodeId from, NodeId to, SimTime now) {
    ++counters_.sent;
    if (separated(from, to, now)) {
        ++counters_.partition_dropped;
        return {SendOutcome::kPartitionDrop, 0};
    }
    if (link_.drop_probability > 0.0 && rng_.uniform() < link_.drop_probability) {
        ++counters_.random_dropped;
        return {SendOutcome::kRandomDrop, 0};
    }
    SimTime latency = link_.base_latency;
    if (link_.jitter > 0) {
        const auto span = 2 * link_.jitter + 1;
        const auto offset = static_cast<std::int64_t>(rng_.next() % span) - static_cast<std::int64_t>(link_.jitter);
        const auto l = static_cast<std::int64_t>(link_.base_latency) + offset;
        latency = l < 0 ? 0 : static_cast<SimTime>(l);
    }
    ++counters_.scheduled;
    return {SendOutcome::kScheduled, latency};
}

}  // namespace poa_arena
