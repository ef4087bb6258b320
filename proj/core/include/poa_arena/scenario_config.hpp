#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "poa_arena/authority.hpp"
#include "poa_arena/network.hpp"
#include "poa_arena/types.hpp"

namespace poa_arena {

enum class BehaviorKind { kHonest, kEquivocator, kCensor, kSybilCloner };

std::string_view to_string(BehaviorKind k) noexcept;
std::string_view to_string(Protocol p) noexcept;

struct NodeBehavior {
    BehaviorKind kind = BehaviorKind::kHonest;
    std::vector<std::uint32_t> controlled;  // sealer indices, SYBIL_CLONER only
};

/// Per-node role. Only the field matching the protocol is meaningful.
struct NodeRole {
    std::vector<std::uint32_t> sealers;  // PoA
    double hashrate = 1.0;               // PoW
    double stake = 1.0;                  // PoS
};

/// Experiment input. Roles and behaviors always hold node_count entries
/// once the config has been normalized.
struct ScenarioConfig {
    Protocol protocol = Protocol::kPoa;
    std::uint32_t node_count = 1;
    std::vector<NodeRole> roles;
    std::vector<NodeBehavior> behaviors;
    SimTime slot_duration = 1000;
    double difficulty = 0.0;  // 0 = calibrate to sum(hashrate) * slot_duration
    LinkModel link;
    std::vector<PartitionSpec> partitions;
    SimTime duration = 100'000;
    std::uint64_t seed = 1;
    std::uint32_t finality_depth = 6;
    ReputationDeltas reputation_deltas;
    std::int64_t ejection_threshold = -10;
    double fee_per_payload = 0.0;
    std::uint64_t payload_per_block = 100;

    /// Number of PoA sealers (sum of role sizes).
    [[nodiscard]] std::uint32_t sealer_count() const noexcept;
    [[nodiscard]] double effective_difficulty() const noexcept;
    /// PoA/PoS slots whose start time precedes `duration`; slot s starts at (s-1)*slot_duration.
    [[nodiscard]] std::uint64_t slot_count() const noexcept;
};

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Fills default roles/behaviors and checks every invariant. Throws ConfigError.
ScenarioConfig normalize(ScenarioConfig config);

}  // namespace poa_arena
