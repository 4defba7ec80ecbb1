#pragma once

#include <string>

#include "fdisac/types.hpp"

namespace fdisac {

/// Loads a scenario from JSON. Absent keys keep their defaults; unknown keys
/// and type mismatches raise std::invalid_argument naming the field.
ScenarioConfig load_scenario_config(const std::string& path);
ScenarioConfig parse_scenario_config(const std::string& json_text);

std::string scenario_config_to_json(const ScenarioConfig& cfg);

}  // namespace fdisac
