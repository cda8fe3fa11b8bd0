#pragma once

// Scenario files (YAML). Every key is optional and overrides the built-in three-port
// scenario; unknown keys are errors. See configs/default.yaml for the full schema.

#include <filesystem>
#include <string>
#include <vector>

#include "prouter/engine.hpp"

namespace prouter {

/// Parses and validates; throws ConfigError listing every issue found.
Scenario parse_scenario(const std::string& yaml_text);
Scenario load_scenario(const std::filesystem::path& path);

/// Same checks as load_scenario, returned instead of thrown. Empty means valid.
std::vector<ConfigIssue> check_scenario_file(const std::filesystem::path& path);

}  // namespace prouter
