#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cwom/dynamics/model.hpp"
#include "cwom/io/config.hpp"

namespace cwom {

/// Keys understood by `cwom run`, grouped by section. Quantities need units.
ConfigSchema scenario_schema();
std::vector<std::string> scenario_names();

Config load_scenario(const std::string& path);
/// Parses text (e.g. a preset) against the scenario schema.
Config parse_scenario(const std::string& text);
/// Built-in example configuration for a scenario.
std::string scenario_preset(const std::string& name);

struct RunOptions {
  std::string output_dir = ".";
  std::optional<std::string> scenario;
  std::optional<long> trajectories;
  std::optional<std::uint64_t> seed;
  std::optional<double> dt_override;  // s
  bool validate_only = false;
};

struct RunResult {
  std::string scenario;
  std::vector<std::string> files;
  std::map<std::string, double> numbers;
  std::map<std::string, std::string> labels;
};

/// Applies the option overrides to the config.
void apply_overrides(Config& cfg, const RunOptions& opt);

/// Cross-key checks beyond the schema (missing keys, inconsistent
/// choices). Throws ConfigError listing every problem.
void validate_scenario(const Config& cfg);

/// The model of the `custom` scenario.
Model build_custom_model(const Config& cfg);

/// Validates, writes effective.cfg into the output directory, runs the
/// scenario and writes its artifacts and report.json.
RunResult run_scenario(Config cfg, const RunOptions& opt);

}  // namespace cwom
