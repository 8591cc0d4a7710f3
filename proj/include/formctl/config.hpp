#pragma once

#include <string>

#include "formctl/sim.hpp"

namespace formctl {

// Parse a JSON scenario. Every key is optional; absent keys keep the
// defaults of ScenarioConfig. Unrecognized keys, wrong types, and malformed
// values are hard errors (ConfigError listing every problem found). The
// result is structurally sound but not yet range-checked; run() and
// validate_config() do that.
ScenarioConfig parse_config(const std::string& json_text);

// Read a file and parse it. The file path is included in error messages.
ScenarioConfig load_config(const std::string& path);

// The scenario serialized back to JSON with every default filled in.
// parse_config(resolved_config_json(cfg)) reproduces cfg.
std::string resolved_config_json(const ScenarioConfig& cfg);

}  // namespace formctl
