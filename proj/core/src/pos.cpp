#include "poa_arena/pos.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "poa_arena/rng.hpp"

namespace poa_arena {

StakeTable::StakeTable(std::vector<StakeEntry> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) {
        throw std::invalid_argument("stake table must have at least one entry");
    }
    for (const auto& e : entries_) {
        if (!(e.stake > 0.0)) {
            throw std::invalid_argument("stake of node " + std::to_string(e.node.value) + " must be positive");
        }
        total_ += e.stake;
    }
}

bool StakeTable::contains(NodeId node) const noexcept {
    return std::any_of(entries_.begin(), entries_.end(), [&](const StakeEntry& e) { return e.node == node; });
}

double selection_probability(NodeId node, const StakeTable& stakes) {
    for (const auto& e : stakes.entries()) {
        if (e.node == node) {
            return e.stake / stakes.total();
        }
    }
    throw std::out_of_range("unknown-node: " + std::to_string(node.value) + " has no stake entry");
}

NodeId pos_select_leader(std::uint64_t seed, std::uint64_t slot, const StakeTable& stakes) {
    const auto& entries = stakes.entries();
    if (entries.empty()) {
        throw std::invalid_argument("stake table is empty");
    }
    Xoshiro256 rng(splitmix64(seed ^ slot));
    const double u = rng.uniform();
    double cumulative = 0.0;
    for (const auto& e : entries) {
        cumulative += e.stake / stakes.total();
        if (cumulative > u) {
            return e.node;
        }
    }
    // Rounding can leave the final cumulative sum a hair below u.
    return entries.back().node;
}

std::optional<Block> pos_step(const ChainStore& store, NodeId self, std::uint64_t slot, const StakeTable& stakes,
                              std::uint64_t seed, std::uint64_t payload) {
    if (pos_select_leader(seed, slot, stakes) != self) {
        return std::nullopt;
    }
    const Block& tip = store.at(store.fork_choice());
    if (tip.header.slot >= slot && tip.header.height > 0) {
        return std::nullopt;
    }
    BlockHeader h;
    h.parent = tip.digest;
    h.height = tip.header.height + 1;
    h.slot = slot;
    h.proposer = self.value;
    h.seal_weight = 1;
    h.payload_count = payload;
    return Block::make(h);
}

}  // namespace poa_arena
