#pragma once

#include "fh/scenario.hpp"

#include <string>

namespace fh {

/// Reads and validates a scenario file. Parse and shape errors throw
/// std::runtime_error carrying the offending field path.
Scenario load_scenario(const std::string& path);

Scenario scenario_from_json_text(const std::string& text);

/// Serializes with complex entries as [re, im] pairs and shortest
/// round-trip decimals, so that save/load is lossless for finite doubles.
std::string scenario_to_json_text(const Scenario& scenario);

void save_scenario(const Scenario& scenario, const std::string& path);

} // namespace fh
