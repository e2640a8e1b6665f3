#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "sigalloc/experiment.hpp"

namespace sigalloc {

// Anything wrong with user-supplied configuration: unreadable file, unknown
// key, malformed value, invalid combination. Maps to exit code 2 in the CLI.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "linear", "composite:0.3:1.7", "finite_time:0.7", "saturated:1".
Nonlinearity parse_nonlinearity(const std::string& spec);

// "discrete", "euler", "rk4".
StepMode parse_mode(const std::string& name);
const char* mode_name(StepMode mode);

// Flat key = value text with [cost] / [graph] / [methods] / [oracle] /
// [output] sections; see the README for the full schema. Every field of
// ExperimentConfig is addressable.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

// One --set assignment, applied after parsing; last write wins. Dotted keys
// address section fields (graph.p=0.25); bare `eta` retunes every method,
// `alpha`/`beta` retune every composite method; `method` appends. Unknown
// keys are errors, not warnings.
void apply_override(ExperimentConfig& cfg, const std::string& assignment);

// Frozen scenario library. The files under presets/ carry the same bytes;
// a test pins them together.
const std::vector<std::string>& preset_names();
std::string preset_text(const std::string& name);
ExperimentConfig load_preset(const std::string& name);

} // namespace sigalloc
