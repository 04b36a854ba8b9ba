#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cwom/core/field.hpp"
#include "cwom/dynamics/boundary.hpp"
#include "cwom/dynamics/model.hpp"
#include "cwom/dynamics/rng.hpp"

namespace cwom {

/// NaN or Inf appeared in a field.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, double time, std::size_t step)
      : std::runtime_error(what), time_(time), step_(step) {}
  double time() const { return time_; }
  std::size_t step() const { return step_; }

 private:
  double time_;
  std::size_t step_;
};

/// Largest stable dt: 0.5 over the fastest rate of the explicit part
/// (interaction at the expected field scale, damping, residual carrier
/// frequencies). Dispersion is integrated exactly and does not enter, except
/// that open boundaries cap dt at dx / v_max so nothing crosses the absorber
/// between two applications of it.
double stability_bound(const Model& model, const FieldState& state);

/// Deterministic continuous-time derivatives of all fields: dispersion,
/// damping, absorber, drives and interaction. Zero at a steady state.
FieldDerivatives mean_field_rhs(const Model& model, const FieldState& state);

/// Strang-split integrator.
///
/// Each step is a half step of the exact linear part (dispersion, damping,
/// entrance sources), an RK4 step of interaction and side drives, the
/// absorber and Langevin increments, then another linear half step. Noise
/// for step n depends only on (seed, trajectory, n).
class Stepper {
 public:
  Stepper(const Model& model, double dt, std::uint64_t seed = 0, std::uint64_t trajectory = 0);

  void step(FieldState& state);
  double dt() const { return dt_; }
  std::size_t steps_taken() const { return count_; }
  const Model& model() const { return model_; }
  /// Skip the Langevin terms even if the bath asks for them.
  void set_noise(bool on) { noise_ = on; }

 private:
  struct LinearFactors {
    ComplexField exp_half;
    ComplexField phi_half;
  };
  void linear_half(FieldState& s, double t_mid) const;
  void add_drive_rhs(const FieldState& s, std::vector<ComplexField>& da) const;
  void add_noise(FieldState& s);

  Model model_;
  double dt_;
  std::uint64_t seed_;
  std::uint64_t trajectory_;
  std::size_t count_ = 0;
  bool noise_ = true;
  bool has_interaction_ = false;
  std::vector<LinearFactors> photon_lin_;
  LinearFactors phonon_lin_;
  std::vector<Entrance> entrances_;
  AbsorberProfile absorber_;
};

/// One step from a fresh stepper (noise of step index 0).
FieldState step(const FieldState& state, const Model& model, double dt, std::uint64_t seed = 0,
                std::uint64_t trajectory = 0);

/// Linear half-step factors exp(L h) and (exp(L h) - 1) / L for L(k) = -i w(k) - rate/2.
void linear_factors(const RealField& omega, double rate, double h, ComplexField& exp_h, ComplexField& phi_h);

}  // namespace cwom
