#include "poa_arena/world.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <ostream>

#include "poa_arena/poa_engine.hpp"

namespace poa_arena {

namespace {

constexpr std::uint64_t kNetworkStream = 0x6e6574;   // "net"
constexpr std::uint64_t kLotteryStream = 0x6c6f74;   // "lot"
constexpr std::uint64_t kNodeStreamBase = 0x6e6f6465'00000000ULL;

}  // namespace

bool World::Coalition::member(NodeId n) const noexcept {
    return std::find(members.begin(), members.end(), n) != members.end();
}

int World::Coalition::audience_of(NodeId n) const noexcept {
    for (int v = 0; v < 2; ++v) {
        if (std::find(audiences[v].begin(), audiences[v].end(), n) != audiences[v].end()) {
            return v;
        }
    }
    return -1;
}

World::World(ScenarioConfig config)
    : config_(std::move(config)),
      network_(config_.link, config_.partitions, derive_seed(config_.seed, kNetworkStream)) {
    nodes_.resize(config_.node_count);
    for (std::uint32_t i = 0; i < config_.node_count; ++i) {
        NodeState& n = nodes_[i];
        n.id = NodeId{i};
        n.behavior = config_.behaviors.at(i);
        n.role = config_.roles.at(i);
        n.tip = n.store.genesis();
        n.rng = Xoshiro256(derive_seed(config_.seed, kNodeStreamBase + i));
        n.finality.first_final.push_back(n.store.genesis());
    }

    switch (config_.protocol) {
        case Protocol::kPoa: {
            authority_ = AuthoritySet(config_.sealer_count(), config_.ejection_threshold, config_.reputation_deltas);
            sealer_owner_.assign(config_.sealer_count(), 0);
            for (const auto& n : nodes_) {
                for (auto s : n.role.sealers) sealer_owner_.at(s) = n.id.value;
            }
            break;
        }
        case Protocol::kPos: {
            std::vector<StakeEntry> entries;
            for (const auto& n : nodes_) entries.push_back({n.id, n.role.stake});
            stakes_ = StakeTable(std::move(entries));
            lottery_seed_ = derive_seed(config_.seed, kLotteryStream);
            break;
        }
        case Protocol::kPow:
            difficulty_ = DifficultyParam{config_.effective_difficulty()};
            break;
    }

    std::vector<NodeId> members;
    std::vector<NodeId> others;
    for (const auto& n : nodes_) {
        (n.behavior.kind == BehaviorKind::kEquivocator ? members : others).push_back(n.id);
    }
    if (!members.empty()) {
        Coalition c;
        c.members = members;
        const std::size_t half = (others.size() + 1) / 2;
        c.audiences[0].assign(others.begin(), others.begin() + static_cast<std::ptrdiff_t>(half));
        c.audiences[1].assign(others.begin() + static_cast<std::ptrdiff_t>(half), others.end());
        coalition_ = std::move(c);
    }

    if (config_.protocol == Protocol::kPow) {
        for (auto& n : nodes_) restart_mining(n);
    } else if (config_.slot_count() >= 1) {
        queue_.schedule(slot_start(1), kAllNodes, SlotTick{1});
    }
}

void World::run_until(SimTime t_end) {
    while (!queue_.empty() && queue_.top().at <= t_end) {
        dispatch(queue_.pop());
    }
    queue_.advance_to(t_end);
}

std::optional<SimTime> World::proposal_time(Digest d) const {
    auto it = proposal_time_.find(d);
    if (it == proposal_time_.end()) return std::nullopt;
    return it->second;
}

std::uint64_t World::current_slot() const noexcept {
    return config_.slot_duration == 0 ? 0 : queue_.now() / config_.slot_duration + 1;
}

SimTime World::slot_start(std::uint64_t slot) const noexcept { return (slot - 1) * config_.slot_duration; }

SimTime World::refetch_interval() const noexcept {
    return 2 * (config_.link.base_latency + config_.link.jitter) + 1;
}

std::vector<ReputationEntry> World::reputation_snapshot_for(NodeId requester) const {
    (void)node(requester);
    return reputation_snapshot(authority_);
}

bool World::validating(const NodeState& n) const noexcept { return !(coalition_ && coalition_->member(n.id)); }

std::uint64_t World::payload_for(const NodeState& n) const noexcept {
    return n.behavior.kind == BehaviorKind::kCensor ? 0 : config_.payload_per_block;
}

void World::log_event(const SimEvent& ev) {
    const std::array<std::uint64_t, 5> words{ev.at, ev.seq, ev.target.value,
                                             static_cast<std::uint64_t>(ev.kind()), ev.digest().value};
    log_digest_ = splitmix_fold(words, log_digest_);
    if (record_) {
        recorded_.push_back(EventRecord{ev.at, ev.seq, ev.target, ev.kind(), ev.digest()});
    }
    if (log_out_ != nullptr) {
        char digest[17];
        std::snprintf(digest, sizeof digest, "%016llx", static_cast<unsigned long long>(ev.digest().value));
        *log_out_ << ev.at << ' ' << ev.seq << ' ';
        if (ev.target == kAllNodes) {
            *log_out_ << "all";
        } else {
            *log_out_ << ev.target.value;
        }
        *log_out_ << ' ' << to_string(ev.kind()) << ' ' << digest << '\n';
    }
}

void World::dispatch(const SimEvent& ev) {
    log_event(ev);
    ++dispatched_;
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, BlockArrival>) {
                on_block_arrival(nodes_.at(ev.target.value), p.block, p.from);
            } else if constexpr (std::is_same_v<T, SlotTick>) {
                on_slot_tick(p.slot);
            } else if constexpr (std::is_same_v<T, MiningComplete>) {
                on_mining_complete(nodes_.at(ev.target.value), p.attempt_id);
            } else if constexpr (std::is_same_v<T, Timer>) {
                auto& n = nodes_.at(ev.target.value);
                if (p.tag == TimerTag::kOutOfTurn) {
                    on_out_of_turn_timer(n, p.a, static_cast<std::uint32_t>(p.b));
                } else {
                    on_refetch_timer(n, Digest{p.a});
                }
            } else if constexpr (std::is_same_v<T, BlockRequest>) {
                on_block_request(nodes_.at(ev.target.value), p);
            }
        },
        ev.payload);
}

// --- slots -----------------------------------------------------------------

void World::on_slot_tick(std::uint64_t slot) {
    if (config_.protocol == Protocol::kPoa && slot > 1) {
        evaluate_missed_slot(slot - 1);
    }
    if (slot > 1) announce_stale_tips(slot);
    for (auto& n : nodes_) {
        if (config_.protocol == Protocol::kPoa) {
            poa_slot_start(n, slot);
        } else {
            pos_slot_start(n, slot);
        }
    }
    if (slot < config_.slot_count()) {
        queue_.schedule(slot_start(slot + 1), kAllNodes, SlotTick{slot + 1});
    }
}

// A tip that sat unchanged for a whole slot is re-sent to every peer. Blocks are
// otherwise pushed once and pulled only when a child arrives, so a dropped last
// block could leave every node waiting on a chain it cannot see.
void World::announce_stale_tips(std::uint64_t slot) {
    for (auto& n : nodes_) {
        if (!validating(n) || n.tip == n.store.genesis()) continue;
        if (n.tip_changed_at < slot_start(slot - 1)) broadcast(n.id, n.store.at(n.tip));
    }
}

void World::poa_slot_start(NodeState& node, std::uint64_t slot) {
    const std::uint32_t in_turn = in_turn_sealer(slot, authority_).index;
    if (!validating(node)) {
        for (auto s : node.role.sealers) {
            if (s == in_turn) equivocate(slot, s, 2, node.id);
        }
        return;
    }
    for (auto s : node.role.sealers) {
        if (s == in_turn) {
            if (node.last_proposed_slot == slot) continue;
            PoaNodeView view{node.store, s, node.in_turn_seen_slot >= slot, false, payload_for(node)};
            if (auto b = poa_step(view, slot, authority_)) {
                propose(node, *b);
            }
        } else {
            const SimTime at = slot_start(slot) + out_of_turn_delay(s, authority_.size(), config_.slot_duration);
            queue_.schedule(at, node.id, Timer{TimerTag::kOutOfTurn, slot, s});
        }
    }
}

void World::on_out_of_turn_timer(NodeState& node, std::uint64_t slot, std::uint32_t sealer) {
    if (node.last_proposed_slot == slot) {
        return;
    }
    PoaNodeView view{node.store, sealer, node.in_turn_seen_slot >= slot, true, payload_for(node)};
    if (auto b = poa_step(view, slot, authority_)) {
        propose(node, *b);
    }
}

void World::pos_slot_start(NodeState& node, std::uint64_t slot) {
    if (!validating(node)) {
        if (pos_select_leader(lottery_seed_, slot, stakes_) == node.id) {
            equivocate(slot, node.id.value, 1, node.id);
        }
        return;
    }
    if (auto b = pos_step(node.store, node.id, slot, stakes_, lottery_seed_, payload_for(node))) {
        propose(node, *b);
    }
}

// --- mining ----------------------------------------------------------------

void World::restart_mining(NodeState& node) {
    node.mining = pow_step(node.store, node.mining.attempt_id, queue_.now(), node.rng,
                           MinerSpec{node.id, node.role.hashrate}, difficulty_);
    queue_.schedule(node.mining.completes_at, node.id, MiningComplete{node.mining.attempt_id});
}

void World::on_mining_complete(NodeState& node, std::uint64_t attempt_id) {
    if (attempt_id != node.mining.attempt_id) {
        return;  // superseded by a tip change
    }
    propose(node, pow_block(node.store, node.mining, MinerSpec{node.id, node.role.hashrate}, payload_for(node)));
}

// --- proposals and delivery ------------------------------------------------

void World::propose(NodeState& node, const Block& block) {
    node.last_proposed_slot = block.header.slot;
    proposals_.push_back(ProposalRecord{block, node.id, queue_.now()});
    proposal_time_.try_emplace(block.digest, queue_.now());
    if (node.store.extend(block) == InsertResult::kInserted) {
        after_insert(node, block, node.id);
    }
    broadcast(node.id, block);
}

void World::equivocate(std::uint64_t slot, std::uint32_t proposer, std::uint32_t weight, NodeId proposer_node) {
    Coalition& c = *coalition_;
    for (int v = 0; v < 2; ++v) {
        ChainStore& view = c.views[v];
        const Block& tip = view.at(view.fork_choice());
        if (tip.header.height > 0 && tip.header.slot >= slot) continue;
        if (config_.protocol == Protocol::kPoa &&
            recent_signers(view, tip.digest, authority_.size()).contains(proposer)) {
            continue;
        }
        BlockHeader h;
        h.parent = tip.digest;
        h.height = tip.header.height + 1;
        h.slot = slot;
        h.proposer = proposer;
        h.seal_weight = weight;
        h.payload_count = payload_for(nodes_[proposer_node.value]) + static_cast<std::uint64_t>(v);
        const Block block = Block::make(h);

        view.extend(block);
        c.variants[v].insert(block.digest);
        proposals_.push_back(ProposalRecord{block, proposer_node, queue_.now()});
        proposal_time_.try_emplace(block.digest, queue_.now());
        for (NodeId m : c.members) {
            NodeState& member = nodes_[m.value];
            copy_with_ancestors(member.store, view, block);
            update_tip(member);
        }
        for (NodeId to : c.audiences[v]) {
            send_block(proposer_node, to, block);
        }
    }
    nodes_[proposer_node.value].last_proposed_slot = slot;
}

void World::broadcast(NodeId from, const Block& block) {
    for (const auto& n : nodes_) {
        if (n.id != from) send_block(from, n.id, block);
    }
}

void World::send_block(NodeId from, NodeId to, const Block& block) {
    const auto d = network_.send(from, to, queue_.now());
    if (d.outcome == SendOutcome::kScheduled) {
        queue_.schedule(queue_.now() + d.latency, to, BlockArrival{block, from});
    }
}

void World::on_block_arrival(NodeState& node, const Block& block, NodeId from) { accept_block(node, block, from); }

void World::accept_block(NodeState& node, const Block& block, NodeId from) {
    std::deque<std::pair<Block, NodeId>> work;
    work.emplace_back(block, from);
    while (!work.empty()) {
        auto [b, f] = work.front();
        work.pop_front();
        if (node.store.contains(b.digest)) continue;
        if (!node.store.contains(b.header.parent)) {
            defer(node, b, f);
            continue;
        }
        if (!insert_one(node, b, f)) continue;
        if (auto it = node.awaiting.find(b.digest); it != node.awaiting.end()) {
            for (auto& child : it->second.children) work.push_back(std::move(child));
            node.awaiting.erase(it);
        }
    }
}

bool World::insert_one(NodeState& node, const Block& block, NodeId from) {
    if (validating(node) && !validate_incoming(node, block)) {
        return false;
    }
    if (node.store.extend(block) != InsertResult::kInserted) {
        return false;
    }
    after_insert(node, block, from);
    return true;
}

bool World::validate_incoming(NodeState& node, const Block& block) {
    const Block& parent = node.store.at(block.header.parent);
    const auto& h = block.header;
    switch (config_.protocol) {
        case Protocol::kPoa: {
            bool ok = h.slot > parent.header.slot;
            if (ok) {
                const auto window = recent_signers(node.store, parent.digest, authority_.size());
                ok = validate_seal(block, authority_, window) == SealVerdict::kAccept;
            }
            if (!ok && authority_.contains(h.proposer) && invalid_reported_.insert(block.digest).second) {
                reputation_event(h.proposer, ReputationEventKind::kInvalidBlock, h.slot);
            }
            return ok;
        }
        case Protocol::kPos:
            return h.seal_weight == 1 && h.slot > parent.header.slot && stakes_.contains(NodeId{h.proposer}) &&
                   pos_select_leader(lottery_seed_, h.slot, stakes_) == NodeId{h.proposer};
        case Protocol::kPow:
            return h.seal_weight == 1 && h.proposer < config_.node_count;
    }
    return false;
}

void World::defer(NodeState& node, const Block& block, NodeId from) {
    auto [it, fresh] = node.awaiting.try_emplace(block.header.parent);
    PendingFetch& p = it->second;
    if (fresh) {
        p.source = from;
        queue_.schedule(queue_.now() + config_.link.base_latency, node.id,
                        Timer{TimerTag::kRefetch, block.header.parent.value, 0});
    }
    const bool known = std::any_of(p.children.begin(), p.children.end(),
                                   [&](const auto& c) { return c.first.digest == block.digest; });
    if (!known) p.children.emplace_back(block, from);
    // An in-turn block whose ancestry is still in flight still means the slot is covered.
    if (config_.protocol == Protocol::kPoa && validating(node) && block.header.seal_weight == 2) {
        node.in_turn_seen_slot = std::max(node.in_turn_seen_slot, block.header.slot);
    }
}

void World::on_refetch_timer(NodeState& node, Digest parent) {
    auto it = node.awaiting.find(parent);
    if (it == node.awaiting.end()) {
        return;
    }
    if (node.store.contains(parent)) {
        auto children = std::move(it->second.children);
        node.awaiting.erase(it);
        for (auto& [b, f] : children) accept_block(node, b, f);
        return;
    }
    if (it->second.retries >= kMaxRefetchRetries) {
        node.awaiting.erase(it);
        return;
    }
    ++it->second.retries;
    const NodeId source = it->second.source;
    const auto d = network_.send(node.id, source, queue_.now());
    if (d.outcome == SendOutcome::kScheduled) {
        queue_.schedule(queue_.now() + d.latency, source, BlockRequest{parent, node.id});
    }
    queue_.schedule(queue_.now() + refetch_interval(), node.id, Timer{TimerTag::kRefetch, parent.value, 0});
}

void World::on_block_request(NodeState& node, const BlockRequest& req) {
    const Block* b = node.store.find(req.wanted);
    if (b == nullptr) {
        return;
    }
    if (coalition_ && coalition_->member(node.id)) {
        const int audience = coalition_->audience_of(req.requester);
        for (int v = 0; v < 2; ++v) {
            if (v != audience && coalition_->variants[v].contains(req.wanted)) return;
        }
    }
    send_block(node.id, req.requester, *b);
}

void World::after_insert(NodeState& node, const Block& block, NodeId from) {
    if (validating(node) && config_.protocol == Protocol::kPoa) {
        const auto key = std::make_pair(block.header.proposer, block.header.slot);
        auto [it, fresh] = node.by_proposer_slot.try_emplace(key, block.digest);
        if (!fresh && it->second != block.digest && equivocation_reported_.insert(key).second) {
            reputation_event(block.header.proposer, ReputationEventKind::kEquivocation, block.header.slot);
        }
        credit_seal(block);
        if (block.header.seal_weight == 2) {
            node.in_turn_seen_slot = std::max(node.in_turn_seen_slot, block.header.slot);
        }
    }
    if (coalition_ && coalition_->member(node.id)) {
        coalition_share(node, block);
        if (!coalition_->member(from)) coalition_ingest(node, block, from);
    }
    update_tip(node);
}

// --- coalition -------------------------------------------------------------

void World::copy_with_ancestors(ChainStore& dst, const ChainStore& src, const Block& block) {
    std::vector<const Block*> chain;
    const Block* b = &block;
    while (!dst.contains(b->digest)) {
        chain.push_back(b);
        b = &src.at(b->header.parent);
    }
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) dst.extend(**it);
}

void World::coalition_share(const NodeState& source, const Block& block) {
    for (NodeId m : coalition_->members) {
        if (m == source.id) continue;
        NodeState& other = nodes_[m.value];
        if (other.store.contains(block.digest)) continue;
        copy_with_ancestors(other.store, source.store, block);
        update_tip(other);
    }
}

void World::coalition_ingest(const NodeState& member, const Block& block, NodeId from) {
    Coalition& c = *coalition_;
    for (int v = 0; v < 2; ++v) {
        if (c.audiences[v].empty()) continue;
        if (network_.separated(from, c.audiences[v].front(), queue_.now())) continue;
        copy_with_ancestors(c.views[v], member.store, block);
    }
}

// --- tips and finality -----------------------------------------------------

void World::update_tip(NodeState& node) {
    const Digest next = node.store.fork_choice();
    if (next == node.tip) {
        return;
    }
    const ChainStore& s = node.store;
    const Digest anc = s.common_ancestor(node.tip, next);
    const std::uint64_t anc_h = s.at(anc).header.height;
    FinalityTracker& f = node.finality;
    f.max_reorg_depth = std::max(f.max_reorg_depth, s.at(node.tip).header.height - anc_h);
    if (anc_h < f.final_height) {
        f.reverted += f.final_height - anc_h;
        f.final_height = anc_h;
    }
    node.tip = next;
    node.tip_changed_at = queue_.now();

    const std::uint64_t tip_h = s.at(next).header.height;
    const std::uint64_t k = config_.finality_depth;
    const std::uint64_t target = tip_h >= k ? tip_h - k : 0;
    if (target > f.final_height) {
        std::vector<Digest> fresh;
        const Block* b = &s.at(s.ancestor_at(next, target));
        while (b->header.height > f.final_height) {
            fresh.push_back(b->digest);
            b = &s.at(b->header.parent);
        }
        std::uint64_t h = f.final_height;
        for (auto it = fresh.rbegin(); it != fresh.rend(); ++it) {
            ++h;
            if (f.first_final.size() == h) f.first_final.push_back(*it);
            f.finalized_at.try_emplace(*it, queue_.now());
        }
        f.final_height = target;
    }

    if (config_.protocol == Protocol::kPow) {
        restart_mining(node);
    }
}

// --- reputation registry ---------------------------------------------------

void World::reputation_event(std::uint32_t sealer, ReputationEventKind kind, std::uint64_t slot) {
    const std::int64_t before = authority_.record(sealer).reputation;
    authority_.apply(sealer, ReputationEvent{kind, slot}, current_slot());
    reputation_trace_.push_back(
        ReputationChange{queue_.now(), sealer, ReputationEvent{kind, slot}, before, authority_.record(sealer).reputation});
}

void World::credit_seal(const Block& block) {
    if (!credited_.insert(block.digest).second) {
        return;
    }
    const bool in_turn = block.header.seal_weight == 2;
    reputation_event(block.header.proposer,
                     in_turn ? ReputationEventKind::kInTurnSeal : ReputationEventKind::kOutOfTurnSeal,
                     block.header.slot);
    if (in_turn) {
        credited_in_turn_.emplace(block.header.proposer, block.header.slot);
    }
}

void World::evaluate_missed_slot(std::uint64_t slot) {
    const std::uint32_t sealer = in_turn_sealer(slot, authority_).index;
    if (!credited_in_turn_.contains({sealer, slot})) {
        reputation_event(sealer, ReputationEventKind::kMissedSlot, slot);
    }
}

}  // namespace poa_arena
