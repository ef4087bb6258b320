#pragma once

#include <cstdint>

#include "poa_arena/chain_store.hpp"
#include "poa_arena/rng.hpp"
#include "poa_arena/types.hpp"

namespace poa_arena {

struct MinerSpec {
    NodeId id;
    double hashrate = 1.0;  // hashes per millisecond
};

struct DifficultyParam {
    double difficulty = 1.0;  // expected hashes per block
};

/// Inverse-CDF exponential draw: -ln(u) * difficulty / hashrate for u in (0, 1].
double pow_delay_for_uniform(double u, const MinerSpec& miner, const DifficultyParam& diff);

/// Samples the time (ms) a miner needs to find the next block. Draws exactly once from `rng`.
double pow_time_to_block(Xoshiro256& rng, const MinerSpec& miner, const DifficultyParam& diff);

struct MiningAttempt {
    std::uint64_t attempt_id = 0;
    Digest parent;
    SimTime completes_at = 0;
};

/// Starts a fresh attempt on the store's fork-choice tip. A new attempt id
/// supersedes any pending one, which is how a tip change cancels the race.
MiningAttempt pow_step(const ChainStore& store, std::uint64_t previous_attempt, SimTime now, Xoshiro256& rng,
                       const MinerSpec& miner, const DifficultyParam& diff);

/// Block produced when an attempt completes. The slot field carries the completion time.
Block pow_block(const ChainStore& store, const MiningAttempt& attempt, const MinerSpec& miner,
                std::uint64_t payload);

}  // namespace poa_arena
