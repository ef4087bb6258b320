#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "poa_arena/chain_store.hpp"
#include "poa_arena/types.hpp"

namespace poa_arena {

struct StakeEntry {
    NodeId node;
    double stake = 0.0;
};

/// Static stake distribution; order matters for leader sampling.
class StakeTable {
public:
    StakeTable() = default;
    explicit StakeTable(std::vector<StakeEntry> entries);

    [[nodiscard]] const std::vector<StakeEntry>& entries() const noexcept { return entries_; }
    [[nodiscard]] double total() const noexcept { return total_; }
    [[nodiscard]] bool contains(NodeId node) const noexcept;

private:
    std::vector<StakeEntry> entries_;
    double total_ = 0.0;
};

/// s_i / sum_j s_j. Throws std::out_of_range for a node absent from the table.
double selection_probability(NodeId node, const StakeTable& stakes);

/// Leader for `slot`. The draw comes from a stream seeded with
/// splitmix64(seed ^ slot), so every node computes the same leader locally.
NodeId pos_select_leader(std::uint64_t seed, std::uint64_t slot, const StakeTable& stakes);

/// Weight-1 block on the fork-choice tip when `self` leads `slot`.
std::optional<Block> pos_step(const ChainStore& store, NodeId self, std::uint64_t slot, const StakeTable& stakes,
                              std::uint64_t seed, std::uint64_t payload);

}  // namespace poa_arena
