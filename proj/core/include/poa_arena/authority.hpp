#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace poa_arena {

struct SealerId {
    std::uint32_t index = 0;
    std::string label;

    friend bool operator==(const SealerId&, const SealerId&) = default;
};

enum class ReputationEventKind {
    kInTurnSeal,
    kOutOfTurnSeal,
    kEquivocation,
    kInvalidBlock,
    kMissedSlot,
};

std::string_view to_string(ReputationEventKind k) noexcept;

struct ReputationEvent {
    ReputationEventKind kind = ReputationEventKind::kInTurnSeal;
    std::uint64_t slot = 0;
};

/// Score change per event kind. Positive and negative entries coexist so the
/// score is never monotone in one direction.
struct ReputationDeltas {
    std::int64_t in_turn_seal = 2;
    std::int64_t out_of_turn_seal = 1;
    std::int64_t missed_slot = -1;
    std::int64_t invalid_block = -5;
    std::int64_t equivocation = -10;

    [[nodiscard]] std::int64_t delta(ReputationEventKind k) const noexcept;
};

struct SealerRecord {
    SealerId id;
    std::int64_t reputation = 0;
    bool active = true;
    /// Last slot for which the sealer may still seal; set on ejection.
    std::optional<std::uint64_t> ejected_after_slot;
};

/// Fixed roster of sealers. Ejection deactivates a record but never removes
/// it, so rotation indices stay stable for the whole run.
class AuthoritySet {
public:
    AuthoritySet() = default;
    AuthoritySet(std::uint32_t n, std::int64_t ejection_threshold = -10, ReputationDeltas deltas = {});
    explicit AuthoritySet(std::vector<SealerRecord> sealers, std::int64_t ejection_threshold = -10,
                          ReputationDeltas deltas = {});

    [[nodiscard]] std::uint32_t size() const noexcept { return static_cast<std::uint32_t>(sealers_.size()); }
    [[nodiscard]] bool empty() const noexcept { return sealers_.empty(); }
    [[nodiscard]] const std::vector<SealerRecord>& sealers() const noexcept { return sealers_; }
    [[nodiscard]] const SealerRecord& record(std::uint32_t index) const { return sealers_.at(index); }
    [[nodiscard]] std::int64_t ejection_threshold() const noexcept { return ejection_threshold_; }
    [[nodiscard]] const ReputationDeltas& deltas() const noexcept { return deltas_; }

    [[nodiscard]] bool contains(std::uint32_t index) const noexcept { return index < sealers_.size(); }
    /// Member that is active, or was ejected only after `slot`.
    [[nodiscard]] bool authorized(std::uint32_t index, std::uint64_t slot) const noexcept;

    /// Applies `event` to sealer `index`. An ejection triggered here takes
    /// effect after max(event.slot, current_slot).
    void apply(std::uint32_t index, const ReputationEvent& event, std::uint64_t current_slot);

private:
    std::vector<SealerRecord> sealers_;
    std::int64_t ejection_threshold_ = -10;
    ReputationDeltas deltas_;
};

/// Pure score update. No floor: misbehaviour lowers the score from every state.
SealerRecord update_reputation(SealerRecord record, const ReputationEvent& event, const AuthoritySet& set);

struct ReputationEntry {
    SealerId id;
    std::int64_t reputation = 0;
    bool active = true;

    friend bool operator==(const ReputationEntry&, const ReputationEntry&) = default;
};

std::vector<ReputationEntry> reputation_snapshot(const AuthoritySet& set);

/// Largest p with p < n/2.
constexpr std::uint32_t max_byzantine(std::uint32_t n) noexcept { return n == 0 ? 0 : (n + 1) / 2 - 1; }

}  // namespace poa_arena
