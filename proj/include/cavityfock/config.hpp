#pragma once
#include <string>
#include <vector>

#include "cavityfock/experiment.hpp"

namespace cavityfock {

/// Parse the flat key = value config schema. One `key = value` per line,
/// `#` starts a comment, blank lines ignored. Keys are exactly the
/// ExperimentConfig field names (TimingModel fields appear directly:
/// tau_mean, spread, length_ratio, distribution). Complex values are
/// written `re,im`. Unknown keys are errors. Throws ParseError with the
/// line number, or ValidationError naming the violated invariant.
ExperimentConfig parse_config(const std::string& text);

/// Apply one `key=value` override on top of an existing config.
void apply_override(ExperimentConfig& config, const std::string& key_value);

/// Serialize a config in the same schema parse_config reads.
std::string format_config(const ExperimentConfig& config);

struct PresetInfo {
  std::string name;
  std::string description;
};

/// Built-in experiment presets: fig1, fig2-fixed, fig2-small, fig2-large.
std::vector<PresetInfo> preset_list();
bool is_preset(const std::string& name);
ExperimentConfig preset_config(const std::string& name);

}  // namespace cavityfock
