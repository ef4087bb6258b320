#include <gtest/gtest.h>

#include "poa_arena/authority.hpp"
#include "poa_arena/poa_engine.hpp"
#include "poa_arena/rng.hpp"

using namespace poa_arena;

namespace {

Block seal(const Block& parent, std::uint64_t slot, std::uint32_t sealer, const AuthoritySet& set) {
    BlockHeader h;
    h.parent = parent.digest;
    h.height = parent.header.height + 1;
    h.slot = slot;
    h.proposer = sealer;
    h.seal_weight = seal_weight(slot, sealer, set);
    h.payload_count = 100;
    return Block::make(h);
}

}  // namespace

TEST(Rotation, SlotModN) {
    AuthoritySet set(7);
    for (std::uint64_t s = 0; s < 30; ++s) {
        EXPECT_EQ(in_turn_sealer(s, set).index, s % 7);
        EXPECT_EQ(seal_weight(s, static_cast<std::uint32_t>(s % 7), set), 2u);
        EXPECT_EQ(seal_weight(s, static_cast<std::uint32_t>((s + 1) % 7), set), 1u);
    }
    EXPECT_EQ(in_turn_sealer(3, set).label, "sealer-3");
}

TEST(Rotation, MaxByzantine) {
    EXPECT_EQ(max_byzantine(1), 0u);
    EXPECT_EQ(max_byzantine(2), 0u);
    EXPECT_EQ(max_byzantine(3), 1u);
    EXPECT_EQ(max_byzantine(4), 1u);
    EXPECT_EQ(max_byzantine(7), 3u);
    EXPECT_EQ(max_byzantine(10), 4u);
}

TEST(RecentSigners, WindowIsHalfTheRosterAndSkipsGenesis) {
    AuthoritySet set(7);
    ChainStore s;
    Block b = genesis_block();
    EXPECT_TRUE(recent_signers(s, b.digest, 7).entries.empty());
    for (std::uint64_t slot = 1; slot <= 5; ++slot) {
        b = seal(b, slot, static_cast<std::uint32_t>(slot % 7), set);
        s.extend(b);
    }
    const auto w = recent_signers(s, b.digest, 7);
    ASSERT_EQ(w.entries.size(), 3u);
    EXPECT_EQ(w.entries.front().first, 3u);  // oldest first
    EXPECT_TRUE(w.contains(5));
    EXPECT_TRUE(w.contains(3));
    EXPECT_FALSE(w.contains(2));
}

TEST(ValidateSeal, Verdicts) {
    AuthoritySet set(4);
    ChainStore s;
    const Block b1 = seal(genesis_block(), 1, 1, set);
    s.extend(b1);
    const auto window = recent_signers(s, b1.digest, 4);

    EXPECT_EQ(validate_seal(seal(b1, 2, 2, set), set, window), SealVerdict::kAccept);
    EXPECT_EQ(validate_seal(seal(b1, 2, 3, set), set, window), SealVerdict::kAccept);
    EXPECT_EQ(validate_seal(seal(b1, 2, 1, set), set, window), SealVerdict::kSignedRecently);
    EXPECT_EQ(validate_seal(seal(b1, 2, 9, set), set, window), SealVerdict::kNotAuthorized);

    Block heavy = seal(b1, 2, 3, set);
    heavy.header.seal_weight = 2;
    heavy = Block::make(heavy.header);
    EXPECT_EQ(validate_seal(heavy, set, window), SealVerdict::kWrongWeight);
}

TEST(OutOfTurnDelay, HalfSlotPlusStagger) {
    EXPECT_EQ(out_of_turn_delay(0, 7, 1000), 500u);
    EXPECT_EQ(out_of_turn_delay(3, 7, 1000), 500u + 3000u / 28u);
    EXPECT_EQ(out_of_turn_delay(9, 7, 1000), out_of_turn_delay(2, 7, 1000));
    EXPECT_LT(out_of_turn_delay(6, 7, 1000), 750u);
    EXPECT_THROW((void)out_of_turn_delay(0, 0, 1000), std::invalid_argument);
}

TEST(PoaStep, InTurnAndBackupBehaviour) {
    AuthoritySet set(3);
    ChainStore s;

    auto in_turn = poa_step(PoaNodeView{s, 1, false, false, 100}, 1, set);
    ASSERT_TRUE(in_turn);
    EXPECT_EQ(in_turn->header.seal_weight, 2u);
    EXPECT_EQ(in_turn->header.parent, s.genesis());
    EXPECT_EQ(in_turn->header.payload_count, 100u);

    EXPECT_FALSE(poa_step(PoaNodeView{s, 2, false, false, 100}, 1, set));  // delay not elapsed
    EXPECT_FALSE(poa_step(PoaNodeView{s, 2, true, true, 100}, 1, set));    // in-turn block seen
    auto backup = poa_step(PoaNodeView{s, 2, false, true, 100}, 1, set);
    ASSERT_TRUE(backup);
    EXPECT_EQ(backup->header.seal_weight, 1u);

    s.extend(*in_turn);
    EXPECT_FALSE(poa_step(PoaNodeView{s, 1, false, false, 100}, 4, set));  // signed within the window
    EXPECT_FALSE(poa_step(PoaNodeView{s, 2, false, true, 100}, 1, set));   // tip already at this slot
}

TEST(Reputation, DeltasAndStrictEjection) {
    AuthoritySet set(3);
    SealerRecord r = set.record(0);
    r = update_reputation(r, {ReputationEventKind::kInTurnSeal, 1}, set);
    EXPECT_EQ(r.reputation, 2);
    r = update_reputation(r, {ReputationEventKind::kOutOfTurnSeal, 2}, set);
    EXPECT_EQ(r.reputation, 3);
    r = update_reputation(r, {ReputationEventKind::kMissedSlot, 3}, set);
    EXPECT_EQ(r.reputation, 2);
    r = update_reputation(r, {ReputationEventKind::kInvalidBlock, 4}, set);
    EXPECT_EQ(r.reputation, -3);
    r = update_reputation(r, {ReputationEventKind::kMissedSlot, 5}, set);
    r = update_reputation(r, {ReputationEventKind::kInvalidBlock, 6}, set);
    EXPECT_EQ(r.reputation, -9);
    EXPECT_TRUE(r.active);
    r = update_reputation(r, {ReputationEventKind::kMissedSlot, 7}, set);
    EXPECT_EQ(r.reputation, -10);
    EXPECT_TRUE(r.active);  // threshold itself is still tolerated
    r = update_reputation(r, {ReputationEventKind::kMissedSlot, 8}, set);
    EXPECT_FALSE(r.active);
    EXPECT_EQ(r.ejected_after_slot, 8u);
}

TEST(Reputation, MisbehaviourAlwaysLowersScoreWithoutFloor) {
    AuthoritySet set(1);
    Xoshiro256 rng(17);
    const ReputationEventKind bad[] = {ReputationEventKind::kMissedSlot, ReputationEventKind::kInvalidBlock,
                                       ReputationEventKind::kEquivocation};
    for (int i = 0; i < 5000; ++i) {
        SealerRecord r = set.record(0);
        r.reputation = static_cast<std::int64_t>(rng.next() % 2001) - 1000;
        r.active = rng.next() % 2 == 0;
        const auto kind = bad[rng.next() % 3];
        const auto after = update_reputation(r, {kind, 1}, set);
        EXPECT_LT(after.reputation, r.reputation);
    }
}

TEST(Authority, EjectionKeepsEarlierSlotsValid) {
    AuthoritySet set(3);
    set.apply(2, {ReputationEventKind::kEquivocation, 10}, 12);
    EXPECT_TRUE(set.record(2).active);
    set.apply(2, {ReputationEventKind::kMissedSlot, 11}, 14);
    EXPECT_FALSE(set.record(2).active);
    EXPECT_EQ(set.record(2).ejected_after_slot, 14u);
    EXPECT_TRUE(set.authorized(2, 14));
    EXPECT_FALSE(set.authorized(2, 15));
    EXPECT_EQ(in_turn_sealer(2, set).index, 2u);  // turn is kept, just never filled
    EXPECT_FALSE(set.authorized(3, 1));
}

TEST(Authority, SnapshotMirrorsRecords) {
    AuthoritySet set(2);
    set.apply(1, {ReputationEventKind::kInTurnSeal, 1}, 1);
    const auto snap = reputation_snapshot(set);
    ASSERT_EQ(snap.size(), 2u);
    EXPECT_EQ(snap[1].reputation, 2);
    EXPECT_EQ(snap[1].id.label, "sealer-1");
    EXPECT_TRUE(snap[0].active);
}

TEST(Rotation, SmallRosters) {
    EXPECT_EQ(in_turn_sealer(0, AuthoritySet(4)).index, 0u);
    EXPECT_EQ(in_turn_sealer(5, AuthoritySet(4)).index, 1u);
    EXPECT_EQ(in_turn_sealer(7, AuthoritySet(3)).index, 1u);
    EXPECT_EQ(seal_weight(12, 0, AuthoritySet(1)), 2u);
}

TEST(Reputation, EquivocationCrossesThreshold) {
    AuthoritySet set(2);
    SealerRecord r = set.record(0);
    r.reputation = -6;
    r = update_reputation(r, {ReputationEventKind::kEquivocation, 3}, set);
    EXPECT_EQ(r.reputation, -16);
    EXPECT_FALSE(r.active);
}

TEST(ValidateSeal, AcceptsEveryHonestProposal) {
    AuthoritySet set(5);
    ChainStore s;
    Xoshiro256 rng(3);
    for (std::uint64_t slot = 1; slot < 300; ++slot) {
        const std::uint32_t sealer = static_cast<std::uint32_t>(rng.next() % 5);
        const bool in_turn = sealer == in_turn_sealer(slot, set).index;
        auto b = poa_step(PoaNodeView{s, sealer, false, !in_turn, 100}, slot, set);
        if (!b) continue;
        const auto window = recent_signers(s, b->header.parent, 5);
        ASSERT_EQ(validate_seal(*b, set, window), SealVerdict::kAccept);
        s.extend(*b);
    }
    EXPECT_GT(s.size(), 100u);
}
