#include "poa_arena/event_queue.hpp"

#include <string>

namespace poa_arena {

std::string_view to_string(EventKind k) noexcept {
    switch (k) {
        case EventKind::kBlockArrival: return "BLOCK_ARRIVAL";
        case EventKind::kSlotTick: return "SLOT_TICK";
        case EventKind::kMiningComplete: return "MINING_COMPLETE";
        case EventKind::kTimer: return "TIMER";
        case EventKind::kBlockRequest: return "BLOCK_REQUEST";
    }
    return "UNKNOWN";
}

Digest SimEvent::digest() const noexcept {
    if (const auto* a = std::get_if<BlockArrival>(&payload)) {
        return a->block.digest;
    }
    if (const auto* r = std::get_if<BlockRequest>(&payload)) {
        return r->wanted;
    }
    return Digest{};
}

std::uint64_t EventQueue::schedule(SimTime at, NodeId target, EventPayload payload) {
    if (at < now_) {
        throw TimeTravelError("event scheduled at " + std::to_string(at) + " before current time " +
                              std::to_string(now_));
    }
    const std::uint64_t seq = next_seq_++;
    heap_.push(SimEvent{at, seq, target, std::move(payload)});
    return seq;
}

SimEvent EventQueue::pop() {
    SimEvent ev = heap_.top();
    heap_.pop();
    now_ = ev.at;
    return ev;
}

void EventQueue::advance_to(SimTime t) {
    if (t > now_) {
        now_ = t;
    }
}

}  // namespace poa_arena
