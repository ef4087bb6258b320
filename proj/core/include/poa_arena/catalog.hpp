#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "poa_arena/scenario_config.hpp"

namespace poa_arena {

struct AttackPreset {
    std::string name;
    std::string description;
    ScenarioConfig config;  // normalized
};

/// The five named attack scenarios, all on a 7-sealer PoA network.
std::vector<AttackPreset> attack_catalog();

std::optional<AttackPreset> find_preset(std::string_view name);

/// Sybil operator holding sealer identities 0..controlled-1 of a 7-sealer
/// network; the remaining identities belong to one honest node each.
/// A partition isolates the operator for the middle third of the run.
ScenarioConfig sybil_clone_config(std::uint32_t controlled);

}  // namespace poa_arena
