#pragma once

#include <string>

#include "platoon/sim_engine.hpp"

namespace platoon {

inline constexpr const char* kToolkitName = "platoon-sim";
inline constexpr const char* kToolkitVersion = "1.0.0";

// INI-style scenario file. Sections and keys are fixed; unknown sections or
// keys are rejected with a line diagnostic, missing keys fall back to the
// documented defaults. See README for the full grammar.
ScenarioConfig parse_config(const std::string& text, const std::string& origin);
ScenarioConfig load_config(const std::string& path);

// Canonical echo of a resolved config. Parsing the echo reproduces the
// config exactly (doubles are printed with round-trip precision), so a run
// can be replayed bit-identically from its manifest.
std::string serialize_config(const ScenarioConfig& cfg);

}  // namespace platoon
