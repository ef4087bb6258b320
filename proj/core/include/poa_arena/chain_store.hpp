#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "poa_arena/ledger.hpp"

namespace poa_arena {

enum class InsertResult {
    kInserted,
    kDuplicate,
    kUnknownParent,
    kBadHeight,
    kBadDigest,
};

std::string_view to_string(InsertResult r) noexcept;

/// Block tree rooted at the canonical genesis block.
///
/// Fork choice picks the block with the greatest summed seal weight from
/// genesis, breaking ties by greater height and then by the numerically
/// smaller digest. Seal weights are non-negative, so the winner is always a
/// tip and the choice does not depend on insertion order. The best block is
/// maintained incrementally, making fork_choice() O(1).
class ChainStore {
public:
    ChainStore();

    InsertResult extend(const Block& block);

    [[nodiscard]] Digest genesis() const noexcept { return genesis_; }
    [[nodiscard]] Digest fork_choice() const noexcept { return best_; }
    [[nodiscard]] std::size_t fork_count() const noexcept;

    [[nodiscard]] bool contains(Digest d) const noexcept { return entries_.contains(d); }
    [[nodiscard]] const Block* find(Digest d) const noexcept;
    [[nodiscard]] const Block& at(Digest d) const;
    [[nodiscard]] std::uint64_t chain_weight(Digest d) const;
    [[nodiscard]] std::span<const Digest> children(Digest d) const;
    [[nodiscard]] const std::set<Digest>& tips() const noexcept { return tips_; }
    [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }

    /// Digests from genesis up to and including `tip`.
    [[nodiscard]] std::vector<Digest> path_from_genesis(Digest tip) const;
    [[nodiscard]] std::vector<Digest> canonical_chain() const { return path_from_genesis(best_); }

    /// Ancestor of `d` (or `d` itself) at the given height; requires height <= height(d).
    [[nodiscard]] Digest ancestor_at(Digest d, std::uint64_t height) const;
    [[nodiscard]] Digest common_ancestor(Digest a, Digest b) const;
    [[nodiscard]] bool is_ancestor(Digest ancestor, Digest descendant) const;

    /// True when `a` beats `b` under the fork-choice order.
    [[nodiscard]] bool heavier(Digest a, Digest b) const;

private:
    struct Entry {
        Block block;
        std::uint64_t weight = 0;
        std::vector<Digest> children;
    };

    std::unordered_map<Digest, Entry> entries_;
    std::set<Digest> tips_;
    Digest genesis_;
    Digest best_;
};

}  // namespace poa_arena
