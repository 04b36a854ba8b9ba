#include "cwom/dynamics/evolve.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "cwom/core/hamiltonian.hpp"
#include "cwom/dynamics/stepper.hpp"

namespace cwom {

const std::vector<double>& TrajectoryRecord::column(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return values[i];
  throw std::out_of_range("TrajectoryRecord: no observable named '" + name + "'");
}

Observable photon_number_observable(std::size_t branch) {
  return {"photon_number_" + std::to_string(branch),
          [branch](const FieldState& s) { return s.photon_number(branch); }};
}

Observable phonon_number_observable() {
  return {"phonon_number", [](const FieldState& s) { return s.phonon_number(); }};
}

Observable hamiltonian_observable(const Model& model) {
  auto photons = model.frame_photon_dispersions();
  auto phonon = model.frame_phonon_dispersion();
  auto im = model.interaction;
  return {"hamiltonian", [photons, phonon, im](const FieldState& s) { return hamiltonian(s, photons, phonon, im); }};
}

TrajectoryRecord evolve(const FieldState& initial, const Model& model, const EvolveConfig& config,
                        const std::vector<Observable>& observables, const StepCallback& callback) {
  if (config.output_every == 0) throw std::invalid_argument("evolve: output_every must be >= 1");
  initial.validate();
  TrajectoryRecord rec;
  for (const auto& o : observables) rec.names.push_back(o.name);
  rec.values.resize(observables.size());
  auto record = [&](const FieldState& s) {
    rec.times.push_back(s.time);
    for (std::size_t i = 0; i < observables.size(); ++i) rec.values[i].push_back(observables[i].fn(s));
    if (config.keep_snapshots) rec.snapshots.push_back(s);
  };

  FieldState s = initial;
  record(s);
  if (callback) callback(s, 0);
  if (config.steps > 0) {
    if (config.enforce_stability) {
      const double bound = stability_bound(model, s);
      if (config.dt > bound)
        throw std::invalid_argument("evolve: dt = " + std::to_string(config.dt) +
                                    " s exceeds the stability bound " + std::to_string(bound) + " s");
    }
    Stepper stepper(model, config.dt, config.seed, config.trajectory);
    stepper.set_noise(config.noise);
    for (std::size_t n = 1; n <= config.steps; ++n) {
      stepper.step(s);
      if (callback) callback(s, n);
      if (n % config.output_every == 0) record(s);
    }
  }
  rec.final_state = std::move(s);
  return rec;
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("CWOM_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n > 0) return static_cast<unsigned>(n);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

std::vector<TrajectoryRecord> run_ensemble(const FieldState& initial, const Model& model,
                                           const EvolveConfig& config, std::size_t trajectories,
                                           const std::vector<Observable>& observables, unsigned threads) {
  std::vector<TrajectoryRecord> out(trajectories);
  if (threads == 0) threads = default_thread_count();
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(trajectories, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (std::size_t i = next++; i < trajectories; i = next++) {
      try {
        EvolveConfig c = config;
        c.trajectory = config.trajectory + i;
        out[i] = evolve(initial, model, c, observables);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return out;
}

TrajectoryRecord ensemble_mean(const std::vector<TrajectoryRecord>& records) {
  if (records.empty()) throw std::invalid_argument("ensemble_mean: no records");
  TrajectoryRecord m = records.front();
  m.snapshots.clear();
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].times.size() != m.times.size())
      throw std::invalid_argument("ensemble_mean: records have different lengths");
    for (std::size_t i = 0; i < m.values.size(); ++i)
      for (std::size_t k = 0; k < m.values[i].size(); ++k) m.values[i][k] += records[r].values[i][k];
  }
  const double inv = 1.0 / static_cast<double>(records.size());
  for (auto& col : m.values)
    for (auto& v : col) v *= inv;
  return m;
}

}  // namespace cwom
