#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "poa_arena/authority.hpp"
#include "poa_arena/chain_store.hpp"
#include "poa_arena/types.hpp"

namespace poa_arena {

/// Slot-indexed round robin: sealers[slot mod n]. Ejected sealers keep their turn.
const SealerId& in_turn_sealer(std::uint64_t slot, const AuthoritySet& set);

/// 2 for the in-turn sealer, 1 otherwise.
std::uint32_t seal_weight(std::uint64_t slot, std::uint32_t proposer, const AuthoritySet& set);

/// Proposers of the last floor(n/2) blocks ending at some block, oldest first.
struct RecentSignerWindow {
    std::vector<std::pair<std::uint64_t, std::uint32_t>> entries;  // (slot, sealer index)

    [[nodiscard]] bool contains(std::uint32_t sealer) const noexcept;
};

/// Window ending at `tip` (inclusive) for a roster of size n. Genesis never counts.
RecentSignerWindow recent_signers(const ChainStore& store, Digest tip, std::uint32_t n);

enum class SealVerdict {
    kAccept,
    kNotAuthorized,
    kSignedRecently,
    kWrongWeight,
};

std::string_view to_string(SealVerdict v) noexcept;

/// `recent` must be the window ending at the block's parent.
SealVerdict validate_seal(const Block& block, const AuthoritySet& set, const RecentSignerWindow& recent);

/// Wait before an out-of-turn proposal: slot_duration/2 plus a per-sealer stagger
/// of (index mod n) * slot_duration / (4n).
SimTime out_of_turn_delay(std::uint32_t sealer_index, std::uint32_t n, SimTime slot_duration);

/// What a sealing node knows when deciding whether to propose.
struct PoaNodeView {
    const ChainStore& store;
    std::uint32_t sealer = 0;
    bool in_turn_block_seen = false;
    bool out_of_turn_delay_elapsed = false;
    std::uint64_t payload = 0;
};

/// Proposal for `slot`, if any. In turn: weight-2 block on the fork-choice tip
/// unless the sealer is in the recent-signer window. Out of turn: weight-1
/// block, only once the delay has elapsed with no in-turn block observed.
std::optional<Block> poa_step(const PoaNodeView& node, std::uint64_t slot, const AuthoritySet& set);

}  // namespace poa_arena
