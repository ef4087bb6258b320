#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "poa_arena/scenario_config.hpp"

namespace poa_arena {

/// Parses a JSON scenario document against the strict schema and normalizes it.
/// Unknown keys, wrong types and invariant violations throw ConfigError whose
/// message names the offending key path.
ScenarioConfig parse_config(std::string_view json_text);

/// Reads and parses a file. A missing or unreadable file also throws ConfigError.
ScenarioConfig load_config(const std::filesystem::path& path);

/// Canonical JSON form (alphabetical keys, two-space indent). parse_config
/// of the result reproduces the same config.
std::string serialize_config(const ScenarioConfig& config);

}  // namespace poa_arena
