#include <CLI11.hpp>
#include <cstdio>
#include <iostream>

#include "cwom/cli/scenarios.hpp"
#include "cwom/dynamics/stepper.hpp"

using namespace cwom;

int main(int argc, char** argv) {
  CLI::App app{"Continuum optomechanics in 1D waveguides"};
  app.require_subcommand(1);

  RunOptions opt;
  std::string config_path;
  long trajectories = 0;
  std::uint64_t seed = 0;
  double dt = 0.0;

  CLI::App* run = app.add_subcommand("run", "Run a scenario");
  run->add_option("--config", config_path, "Scenario configuration file")->check(CLI::ExistingFile);
  auto* scen = run->add_option("--scenario", "Scenario name (overrides the config)")
                   ->check(CLI::IsMember(scenario_names()));
  run->add_option("--output", opt.output_dir, "Output directory")->capture_default_str();
  auto* traj = run->add_option("--trajectories", trajectories, "Ensemble size")->check(CLI::PositiveNumber);
  auto* sd = run->add_option("--seed", seed, "Base seed");
  auto* dto = run->add_option("--dt-override", dt, "Time step in seconds")->check(CLI::PositiveNumber);
  run->add_flag("--validate-only", opt.validate_only, "Check the configuration and exit");

  CLI::App* presets = app.add_subcommand("preset", "Print a built-in example configuration");
  std::string preset_name;
  presets->add_option("name", preset_name, "Scenario name")->required()->check(CLI::IsMember(scenario_names()));

  CLI::App* schema = app.add_subcommand("keys", "List every configuration key with its unit and default");

  CLI11_PARSE(app, argc, argv);

  if (*presets) {
    std::cout << scenario_preset(preset_name);
    return 0;
  }
  if (*schema) {
    std::string section;
    for (const auto& k : scenario_schema()) {
      if (k.section != section) std::cout << "[" << (section = k.section) << "]\n";
      std::cout << "  " << k.key;
      if (k.kind == KeyKind::quantity || k.kind == KeyKind::quantity_list) std::cout << " [" << k.dim.canonical() << "]";
      if (!k.default_text.empty()) std::cout << " = " << k.default_text;
      if (!k.help.empty()) std::cout << "  # " << k.help;
      std::cout << "\n";
    }
    return 0;
  }

  try {
    if (*scen) opt.scenario = scen->as<std::string>();
    if (*traj) opt.trajectories = trajectories;
    if (*sd) opt.seed = seed;
    if (*dto) opt.dt_override = dt;
    if (config_path.empty() && !opt.scenario) {
      std::cerr << "error: give --config or --scenario\n";
      return 2;
    }
    Config cfg = config_path.empty() ? parse_scenario(scenario_preset(*opt.scenario)) : load_scenario(config_path);
    const RunResult res = run_scenario(cfg, opt);
    if (opt.validate_only) {
      std::cout << "configuration valid (scenario " << res.scenario << ")\n";
      return 0;
    }
    for (const auto& [k, v] : res.labels) std::cout << k << " = " << v << "\n";
    for (const auto& [k, v] : res.numbers) std::printf("%s = %.10g\n", k.c_str(), v);
    for (const auto& f : res.files) std::cout << "wrote " << f << "\n";
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const DivergenceError& e) {
    std::cerr << "diverged: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
