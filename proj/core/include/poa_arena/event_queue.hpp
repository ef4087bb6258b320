#pragma once

#include <cstdint>
#include <queue>
#include <stdexcept>
#include <string_view>
#include <variant>
#include <vector>

#include "poa_arena/ledger.hpp"
#include "poa_arena/types.hpp"

namespace poa_arena {

struct BlockArrival {
    Block block;
    NodeId from;
};

struct SlotTick {
    std::uint64_t slot = 0;
};

struct MiningComplete {
    std::uint64_t attempt_id = 0;
};

enum class TimerTag : std::uint8_t {
    kOutOfTurn,  // a = slot, b = sealer index
    kRefetch,    // a = awaited parent digest
};

struct Timer {
    TimerTag tag = TimerTag::kOutOfTurn;
    std::uint64_t a = 0;
    std::uint64_t b = 0;
};

/// Pull request for a block the requester is missing.
struct BlockRequest {
    Digest wanted;
    NodeId requester;
};

using EventPayload = std::variant<BlockArrival, SlotTick, MiningComplete, Timer, BlockRequest>;

enum class EventKind : std::uint8_t {
    kBlockArrival,
    kSlotTick,
    kMiningComplete,
    kTimer,
    kBlockRequest,
};

std::string_view to_string(EventKind k) noexcept;

struct SimEvent {
    SimTime at = 0;
    std::uint64_t seq = 0;
    NodeId target;
    EventPayload payload;

    [[nodiscard]] EventKind kind() const noexcept { return static_cast<EventKind>(payload.index()); }
    /// Block digest carried by the event, zero when there is none.
    [[nodiscard]] Digest digest() const noexcept;
};

class TimeTravelError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Min-queue over (at, seq). seq is a global issuance counter, so events
/// scheduled for the same instant pop in the order they were scheduled.
class EventQueue {
public:
    /// Throws TimeTravelError if `at` precedes the current time.
    std::uint64_t schedule(SimTime at, NodeId target, EventPayload payload);

    [[nodiscard]] bool empty() const noexcept { return heap_.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return heap_.size(); }
    [[nodiscard]] SimTime now() const noexcept { return now_; }
    [[nodiscard]] const SimEvent& top() const { return heap_.top(); }
    [[nodiscard]] std::uint64_t issued() const noexcept { return next_seq_; }

    /// Removes the earliest event and advances the clock to its time.
    SimEvent pop();

    /// Moves the clock forward without dispatching; never backwards.
    void advance_to(SimTime t);

private:
    struct Later {
        bool operator()(const SimEvent& a, const SimEvent& b) const noexcept {
            return a.at != b.at ? a.at > b.at : a.seq > b.seq;
        }
    };

    std::priority_queue<SimEvent, std::vector<SimEvent>, Later> heap_;
    SimTime now_ = 0;
    std::uint64_t next_seq_ = 0;
};

}  // namespace poa_arena
