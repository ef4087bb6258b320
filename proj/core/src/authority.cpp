#include "poa_arena/authority.hpp"

#include <algorithm>
#include <stdexcept>

namespace poa_arena {

std::string_view to_string(ReputationEventKind k) noexcept {
    switch (k) {
        case ReputationEventKind::kInTurnSeal: return "IN_TURN_SEAL";
        case ReputationEventKind::kOutOfTurnSeal: return "OUT_OF_TURN_SEAL";
        case ReputationEventKind::kEquivocation: return "EQUIVOCATION";
        case ReputationEventKind::kInvalidBlock: return "INVALID_BLOCK";
        case ReputationEventKind::kMissedSlot: return "MISSED_SLOT";
    }
    return "UNKNOWN";
}

std::int64_t ReputationDeltas::delta(ReputationEventKind k) const noexcept {
    switch (k) {
        case ReputationEventKind::kInTurnSeal: return in_turn_seal;
        case ReputationEventKind::kOutOfTurnSeal: return out_of_turn_seal;
        case ReputationEventKind::kEquivocation: return equivocation;
        case ReputationEventKind::kInvalidBlock: return invalid_block;
        case ReputationEventKind::kMissedSlot: return missed_slot;
    }
    return 0;
}

AuthoritySet::AuthoritySet(std::uint32_t n, std::int64_t ejection_threshold, ReputationDeltas deltas)
    : ejection_threshold_(ejection_threshold), deltas_(deltas) {
    if (n == 0) {
        throw std::invalid_argument("authority set needs at least one sealer");
    }
    sealers_.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        sealers_.push_back(SealerRecord{SealerId{i, "sealer-" + std::to_string(i)}, 0, true, std::nullopt});
    }
}

AuthoritySet::AuthoritySet(std::vector<SealerRecord> sealers, std::int64_t ejection_threshold,
                           ReputationDeltas deltas)
    : sealers_(std::move(sealers)), ejection_threshold_(ejection_threshold), deltas_(deltas) {
    if (sealers_.empty()) {
        throw std::invalid_argument("authority set needs at least one sealer");
    }
    for (std::size_t i = 0; i < sealers_.size(); ++i) {
        if (sealers_[i].id.index != i) {
            throw std::invalid_argument("sealer indices must equal roster positions");
        }
    }
}

bool AuthoritySet::authorized(std::uint32_t index, std::uint64_t slot) const noexcept {
    if (index >= sealers_.size()) {
        return false;
    }
    const auto& r = sealers_[index];
    return r.active || (r.ejected_after_slot && slot <= *r.ejected_after_slot);
}

void AuthoritySet::apply(std::uint32_t index, const ReputationEvent& event, std::uint64_t current_slot) {
    SealerRecord& r = sealers_.at(index);
    const bool was_active = r.active;
    r = update_reputation(r, event, *this);
    if (was_active && !r.active) {
        r.ejected_after_slot = std::max(event.slot, current_slot);
    }
}

SealerRecord update_reputation(SealerRecord record, const ReputationEvent& event, const AuthoritySet& set) {
    record.reputation += set.deltas().delta(event.kind);
    if (record.active && record.reputation < set.ejection_threshold()) {
        record.active = false;
        record.ejected_after_slot = event.slot;
    }
    return record;
}

std::vector<ReputationEntry> reputation_snapshot(const AuthoritySet& set) {
    std::vector<ReputationEntry> out;
    out.reserve(set.size());
    for (const auto& r : set.sealers()) {
        out.push_back(ReputationEntry{r.id, r.reputation, r.active});
    }
    return out;
}

}  // namespace poa_arena
