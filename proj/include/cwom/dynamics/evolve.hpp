#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cwom/core/field.hpp"
#include "cwom/dynamics/model.hpp"

namespace cwom {

struct EvolveConfig {
  double dt = 0.0;
  std::size_t steps = 0;
  std::size_t output_every = 1;
  std::uint64_t seed = 0;
  std::uint64_t trajectory = 0;
  bool noise = true;
  /// Reject dt above the stability bound of the initial state.
  bool enforce_stability = true;
  bool keep_snapshots = false;
};

/// Named scalar recorded at every output step.
struct Observable {
  std::string name;
  std::function<double(const FieldState&)> fn;
};

/// Called after every step (and once for the initial state with step 0).
using StepCallback = std::function<void(const FieldState&, std::size_t)>;

struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<std::string> names;
  std::vector<std::vector<double>> values;  // values[observable][sample]
  std::vector<FieldState> snapshots;
  FieldState final_state;

  const std::vector<double>& column(const std::string& name) const;
};

Observable photon_number_observable(std::size_t branch = 0);
Observable phonon_number_observable();
/// Classical H / hbar of the closed system.
Observable hamiltonian_observable(const Model& model);

/// Repeated steps with observers; throws DivergenceError from the stepper.
TrajectoryRecord evolve(const FieldState& initial, const Model& model, const EvolveConfig& config,
                        const std::vector<Observable>& observables = {}, const StepCallback& callback = {});

/// Thread count: CWOM_THREADS if set, else the hardware concurrency.
unsigned default_thread_count();

/// Trajectories 0..n-1 with the same seed run in parallel; results are in
/// trajectory order regardless of scheduling.
std::vector<TrajectoryRecord> run_ensemble(const FieldState& initial, const Model& model,
                                           const EvolveConfig& config, std::size_t trajectories,
                                           const std::vector<Observable>& observables = {},
                                           unsigned threads = 0);

/// Sample-wise mean of the observables (fields of the first record).
TrajectoryRecord ensemble_mean(const std::vector<TrajectoryRecord>& records);

}  // namespace cwom
