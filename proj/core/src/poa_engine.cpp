#include "poa_arena/poa_engine.hpp"

#include <algorithm>
#include <stdexcept>

namespace poa_arena {

const SealerId& in_turn_sealer(std::uint64_t slot, const AuthoritySet& set) {
    if (set.empty()) {
        throw std::invalid_argument("in_turn_sealer: empty authority set");
    }
    return set.record(static_cast<std::uint32_t>(slot % set.size())).id;
}

std::uint32_t seal_weight(std::uint64_t slot, std::uint32_t proposer, const AuthoritySet& set) {
    return in_turn_sealer(slot, set).index == proposer ? 2U : 1U;
}

bool RecentSignerWindow::contains(std::uint32_t sealer) const noexcept {
    return std::any_of(entries.begin(), entries.end(), [&](const auto& e) { return e.second == sealer; });
}

RecentSignerWindow recent_signers(const ChainStore& store, Digest tip, std::uint32_t n) {
    RecentSignerWindow w;
    const std::uint32_t limit = n / 2;
    const Block* b = &store.at(tip);
    while (w.entries.size() < limit && b->header.height > 0) {
        w.entries.emplace_back(b->header.slot, b->header.proposer);
        b = &store.at(b->header.parent);
    }
    std::reverse(w.entries.begin(), w.entries.end());
    return w;
}

std::string_view to_string(SealVerdict v) noexcept {
    switch (v) {
        case SealVerdict::kAccept: return "accept";
        case SealVerdict::kNotAuthorized: return "not-authorized";
        case SealVerdict::kSignedRecently: return "signed-recently";
        case SealVerdict::kWrongWeight: return "wrong-weight";
    }
    return "unknown";
}

SealVerdict validate_seal(const Block& block, const AuthoritySet& set, const RecentSignerWindow& recent) {
    const auto& h = block.header;
    if (!set.authorized(h.proposer, h.slot)) {
        return SealVerdict::kNotAuthorized;
    }
    if (recent.contains(h.proposer)) {
        return SealVerdict::kSignedRecently;
    }
    if (h.seal_weight != seal_weight(h.slot, h.proposer, set)) {
        return SealVerdict::kWrongWeight;
    }
    return SealVerdict::kAccept;
}

SimTime out_of_turn_delay(std::uint32_t sealer_index, std::uint32_t n, SimTime slot_duration) {
    if (n == 0) {
        throw std::invalid_argument("out_of_turn_delay: empty roster");
    }
    return slot_duration / 2 + (sealer_index % n) * slot_duration / (4 * static_cast<SimTime>(n));
}

std::optional<Block> poa_step(const PoaNodeView& node, std::uint64_t slot, const AuthoritySet& set) {
    if (!set.authorized(node.sealer, slot)) {
        return std::nullopt;
    }
    const Block& tip = node.store.at(node.store.fork_choice());
    if (tip.header.height > 0 && tip.header.slot >= slot) {
        return std::nullopt;
    }
    if (recent_signers(node.store, tip.digest, set.size()).contains(node.sealer)) {
        return std::nullopt;
    }
    const std::uint32_t weight = seal_weight(slot, node.sealer, set);
    if (weight == 1 && (!node.out_of_turn_delay_elapsed || node.in_turn_block_seen)) {
        return std::nullopt;
    }
    BlockHeader h;
    h.parent = tip.digest;
    h.height = tip.header.height + 1;
    h.slot = slot;
    h.proposer = node.sealer;
    h.seal_weight = weight;
    h.payload_count = node.payload;
    return Block::make(h);
}

}  // namespace poa_arena
