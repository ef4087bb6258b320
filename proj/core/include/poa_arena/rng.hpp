#pragma once

#include <array>
#include <cstdint>

#include "poa_arena/ledger.hpp"

namespace poa_arena {

/// xoshiro256** seeded by SplitMix64 expansion of a 64-bit seed.
/// Streams are bit-exact for a given seed.
class Xoshiro256 {
public:
    explicit constexpr Xoshiro256(std::uint64_t seed) noexcept {
        std::uint64_t x = seed;
        for (auto& s : state_) {
            s = splitmix64(x);
            x += 0x9E3779B97F4A7C15ULL;
        }
    }

    constexpr std::uint64_t next() noexcept {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform in [0, 1) with 53 bits of resolution.
    constexpr double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform in (0, 1].
    constexpr double uniform_open_closed() noexcept {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }

    [[nodiscard]] constexpr const std::array<std::uint64_t, 4>& state() const noexcept { return state_; }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

    std::array<std::uint64_t, 4> state_{};
};

/// Independent sub-stream seed for a (seed, purpose) pair.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t purpose) noexcept {
    return splitmix64(splitmix64(seed) ^ purpose);
}

}  // namespace poa_arena
