#pragma once

#include <array>
#include <cstdint>

#include "poa_arena/types.hpp"

namespace poa_arena {

/// One SplitMix64 step: golden-gamma increment followed by the 64-bit finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    std::uint64_t z = x + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Fold h := splitmix64(h ^ w) over a word sequence, starting from h = 0.
template <typename Range>
constexpr std::uint64_t splitmix_fold(const Range& words, std::uint64_t h = 0) noexcept {
    for (std::uint64_t w : words) {
        h = splitmix64(h ^ w);
    }
    return h;
}

struct BlockHeader {
    Digest parent;
    std::uint64_t height = 0;
    std::uint64_t slot = 0;
    /// Node id under PoW/PoS, sealer index under PoA.
    std::uint32_t proposer = 0;
    std::uint32_t seal_weight = 0;
    std::uint64_t payload_count = 0;

    friend constexpr bool operator==(const BlockHeader&, const BlockHeader&) = default;
};

/// Canonical word order: parent, height, slot, proposer, seal_weight, payload_count.
constexpr std::array<std::uint64_t, 6> canonical_words(const BlockHeader& h) noexcept {
    return {h.parent.value, h.height, h.slot, h.proposer, h.seal_weight, h.payload_count};
}

constexpr Digest hash_block(const BlockHeader& header) noexcept {
    return Digest{splitmix_fold(canonical_words(header))};
}

struct Block {
    BlockHeader header;
    Digest digest;

    static constexpr Block make(const BlockHeader& header) noexcept { return Block{header, hash_block(header)}; }

    friend constexpr bool operator==(const Block&, const Block&) = default;
};

/// All-zero header: height 0, zero parent, zero weight.
constexpr Block genesis_block() noexcept { return Block::make(BlockHeader{}); }

}  // namespace poa_arena
