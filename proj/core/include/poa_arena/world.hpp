#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "poa_arena/authority.hpp"
#include "poa_arena/chain_store.hpp"
#include "poa_arena/event_queue.hpp"
#include "poa_arena/network.hpp"
#include "poa_arena/pos.hpp"
#include "poa_arena/pow.hpp"
#include "poa_arena/rng.hpp"
#include "poa_arena/scenario_config.hpp"

namespace poa_arena {

inline constexpr std::uint32_t kMaxRefetchRetries = 10;

/// k-deep finality bookkeeping for one node.
struct FinalityTracker {
    std::uint64_t final_height = 0;      // current finalized height in this node's view
    std::vector<Digest> first_final;     // first block this node ever finalized at each height
    std::uint64_t reverted = 0;          // finalized blocks later abandoned by a reorg
    std::uint64_t max_reorg_depth = 0;
    std::unordered_map<Digest, SimTime> finalized_at;
};

struct PendingFetch {
    std::vector<std::pair<Block, NodeId>> children;
    NodeId source;
    std::uint32_t retries = 0;
};

struct NodeState {
    NodeId id;
    NodeBehavior behavior;
    NodeRole role;
    ChainStore store;
    Digest tip;
    Xoshiro256 rng{0};

    SimTime tip_changed_at = 0;
    std::uint64_t in_turn_seen_slot = 0;
    std::uint64_t last_proposed_slot = 0;
    MiningAttempt mining;

    std::unordered_map<Digest, PendingFetch> awaiting;  // keyed by missing parent
    std::map<std::pair<std::uint32_t, std::uint64_t>, Digest> by_proposer_slot;
    FinalityTracker finality;

    [[nodiscard]] bool honest() const noexcept { return behavior.kind == BehaviorKind::kHonest; }
};

struct EventRecord {
    SimTime at = 0;
    std::uint64_t seq = 0;
    NodeId target;
    EventKind kind = EventKind::kSlotTick;
    Digest digest;
};

struct ReputationChange {
    SimTime at = 0;
    std::uint32_t sealer = 0;
    ReputationEvent event;
    std::int64_t before = 0;
    std::int64_t after = 0;
};

struct ProposalRecord {
    Block block;
    NodeId node;
    SimTime at = 0;
};

/// Deterministic discrete-event world: one global (time, seq) ordered queue
/// driving every node, the link layer, and the shared reputation registry.
class World {
public:
    /// `config` must already be normalized.
    explicit World(ScenarioConfig config);

    /// Dispatches every event with time <= t_end, then sets the clock to t_end.
    void run_until(SimTime t_end);
    void run() { run_until(config_.duration); }

    /// Sends `block` from `from` to every other node, subject to partitions and drops.
    void broadcast(NodeId from, const Block& block);

    /// Optional line-delimited log: "<time> <seq> <target> <kind> <digest>".
    void set_event_log(std::ostream* out) noexcept { log_out_ = out; }

    [[nodiscard]] const ScenarioConfig& config() const noexcept { return config_; }
    [[nodiscard]] SimTime now() const noexcept { return queue_.now(); }
    [[nodiscard]] std::span<const NodeState> nodes() const noexcept { return nodes_; }
    [[nodiscard]] const NodeState& node(NodeId id) const { return nodes_.at(id.value); }
    [[nodiscard]] EventQueue& queue() noexcept { return queue_; }

    [[nodiscard]] const AuthoritySet& authority() const noexcept { return authority_; }
    /// Reputation view served to `requester`. Every node reads the same global registry.
    [[nodiscard]] std::vector<ReputationEntry> reputation_snapshot_for(NodeId requester) const;
    [[nodiscard]] const std::vector<ReputationChange>& reputation_trace() const noexcept { return reputation_trace_; }

    [[nodiscard]] std::uint64_t event_log_digest() const noexcept { return log_digest_; }
    [[nodiscard]] std::uint64_t dispatched() const noexcept { return dispatched_; }
    [[nodiscard]] const std::vector<EventRecord>& recorded_events() const noexcept { return recorded_; }
    void record_events(bool on) noexcept { record_ = on; }

    [[nodiscard]] const MessageCounters& messages() const noexcept { return network_.counters(); }
    [[nodiscard]] const Network& network() const noexcept { return network_; }
    [[nodiscard]] const std::vector<ProposalRecord>& proposals() const noexcept { return proposals_; }
    [[nodiscard]] std::optional<SimTime> proposal_time(Digest d) const;
    [[nodiscard]] std::uint64_t current_slot() const noexcept;
    [[nodiscard]] std::uint32_t sealer_owner(std::uint32_t sealer) const { return sealer_owner_.at(sealer); }

private:
    struct Coalition {
        std::vector<NodeId> members;
        std::array<std::vector<NodeId>, 2> audiences;
        std::array<ChainStore, 2> views;
        std::array<std::unordered_set<Digest>, 2> variants;

        [[nodiscard]] bool member(NodeId n) const noexcept;
        [[nodiscard]] int audience_of(NodeId n) const noexcept;
    };

    void dispatch(const SimEvent& ev);
    void log_event(const SimEvent& ev);

    void on_slot_tick(std::uint64_t slot);
    void announce_stale_tips(std::uint64_t slot);
    void poa_slot_start(NodeState& node, std::uint64_t slot);
    void pos_slot_start(NodeState& node, std::uint64_t slot);
    void on_out_of_turn_timer(NodeState& node, std::uint64_t slot, std::uint32_t sealer);
    void on_mining_complete(NodeState& node, std::uint64_t attempt_id);
    void on_refetch_timer(NodeState& node, Digest parent);
    void on_block_request(NodeState& node, const BlockRequest& req);
    void on_block_arrival(NodeState& node, const Block& block, NodeId from);

    void equivocate(std::uint64_t slot, std::uint32_t sealer, std::uint32_t weight, NodeId proposer_node);
    void propose(NodeState& node, const Block& block);
    void send_block(NodeId from, NodeId to, const Block& block);

    /// Inserts, then drains any children that were waiting on this block.
    void accept_block(NodeState& node, const Block& block, NodeId from);
    bool insert_one(NodeState& node, const Block& block, NodeId from);
    bool validate_incoming(NodeState& node, const Block& block);
    void defer(NodeState& node, const Block& block, NodeId from);
    void after_insert(NodeState& node, const Block& block, NodeId from);
    void update_tip(NodeState& node);
    void restart_mining(NodeState& node);

    void coalition_ingest(const NodeState& member, const Block& block, NodeId from);
    void coalition_share(const NodeState& source, const Block& block);
    static void copy_with_ancestors(ChainStore& dst, const ChainStore& src, const Block& block);

    void reputation_event(std::uint32_t sealer, ReputationEventKind kind, std::uint64_t slot);
    void credit_seal(const Block& block);
    void evaluate_missed_slot(std::uint64_t slot);

    [[nodiscard]] bool validating(const NodeState& n) const noexcept;
    [[nodiscard]] std::uint64_t payload_for(const NodeState& n) const noexcept;
    [[nodiscard]] SimTime slot_start(std::uint64_t slot) const noexcept;
    [[nodiscard]] SimTime refetch_interval() const noexcept;

    ScenarioConfig config_;
    EventQueue queue_;
    Network network_;
    std::vector<NodeState> nodes_;
    AuthoritySet authority_;
    std::vector<std::uint32_t> sealer_owner_;
    StakeTable stakes_;
    std::uint64_t lottery_seed_ = 0;
    DifficultyParam difficulty_;
    std::optional<Coalition> coalition_;

    std::unordered_set<Digest> credited_;
    std::set<std::pair<std::uint32_t, std::uint64_t>> credited_in_turn_;
    std::set<std::pair<std::uint32_t, std::uint64_t>> equivocation_reported_;
    std::unordered_set<Digest> invalid_reported_;
    std::vector<ReputationChange> reputation_trace_;

    std::vector<ProposalRecord> proposals_;
    std::unordered_map<Digest, SimTime> proposal_time_;

    std::ostream* log_out_ = nullptr;
    bool record_ = false;
    std::vector<EventRecord> recorded_;
    std::uint64_t log_digest_ = 0;
    std::uint64_t dispatched_ = 0;
};

}  // namespace poa_arena
