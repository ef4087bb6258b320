#include "poa_arena/pow.hpp"

#include <cmath>
#include <stdexcept>

namespace poa_arena {

double pow_delay_for_uniform(double u, const MinerSpec& miner, const DifficultyParam& diff) {
    if (!(miner.hashrate > 0.0)) {
        throw std::invalid_argument("miner hashrate must be positive");
    }
    if (!(diff.difficulty > 0.0)) {
        throw std::invalid_argument("difficulty must be positive");
    }
    return -std::log(u) * diff.difficulty / miner.hashrate;
}

double pow_time_to_block(Xoshiro256& rng, const MinerSpec& miner, const DifficultyParam& diff) {
    return pow_delay_for_uniform(rng.uniform_open_closed(), miner, diff);
}

MiningAttempt pow_step(const ChainStore& store, std::uint64_t previous_attempt, SimTime now, Xoshiro256& rng,
                       const MinerSpec& miner, const DifficultyParam& diff) {
    const double delay = pow_time_to_block(rng, miner, diff);
    return MiningAttempt{
        previous_attempt + 1,
        store.fork_choice(),
        now + static_cast<SimTime>(std::llround(delay)),
    };
}

Block pow_block(const ChainStore& store, const MiningAttempt& attempt, const MinerSpec& miner,
                std::uint64_t payload) {
    const Block& parent = store.at(attempt.parent);
    BlockHeader h;
    h.parent = attempt.parent;
    h.height = parent.header.height + 1;
    h.slot = attempt.completes_at;
    h.proposer = miner.id.value;
    h.seal_weight = 1;
    h.payload_count = payload;
    return Block::make(h);
}

}  // namespace poa_arena
