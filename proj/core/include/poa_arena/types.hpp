#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>

namespace poa_arena {

/// Virtual time in milliseconds.
using SimTime = std::uint64_t;

struct NodeId {
    std::uint32_t value = 0;

    friend constexpr auto operator<=>(NodeId, NodeId) = default;
};

/// Addresses every node at once (slot ticks).
inline constexpr NodeId kAllNodes{std::numeric_limits<std::uint32_t>::max()};

/// Opaque 64-bit block identifier. Not a cryptographic hash.
struct Digest {
    std::uint64_t value = 0;

    friend constexpr auto operator<=>(Digest, Digest) = default;
};

enum class Protocol { kPoa, kPow, kPos };

}  // namespace poa_arena

template <>
struct std::hash<poa_arena::Digest> {
    std::size_t operator()(poa_arena::Digest d) const noexcept { return static_cast<std::size_t>(d.value); }
};

template <>
struct std::hash<poa_arena::NodeId> {
    std::size_t operator()(poa_arena::NodeId n) const noexcept { return n.value; }
};
