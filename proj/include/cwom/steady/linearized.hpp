#pragma once

#include <vector>

#include "cwom/core/interaction.hpp"
#include "cwom/steady/steady.hpp"

namespace cwom {

/// Fluctuations around a steady state as a doubled system: each field and
/// its conjugate partner evolve independently (delta b and delta b^dag are
/// both tracked). For a physical fluctuation the partners are conjugates.
struct Fluctuation {
  Grid1D grid;
  std::vector<ComplexField> a, abar;
  ComplexField b, bbar;
  double time = 0.0;

  /// Partners set to the complex conjugates of `perturbation`'s fields.
  static Fluctuation physical(const FieldState& perturbation);
  /// The (a, b) half as a FieldState with the given carriers.
  FieldState plain(const FieldState& carriers_from) const;
};

struct FluctuationRates {
  std::vector<ComplexField> da, dabar;
  ComplexField db, dbbar;
};

/// Interaction part of the linearized equations: every bilinear term
/// differentiated around the steady fields, including the g_beta frequency
/// shift and all derivative couplings.
FluctuationRates linearized_interaction(const Fluctuation& f, const SteadyState& steady, const Model& model);

/// Full linear right-hand side: in-frame dispersion, kappa/2, Gamma/2, the
/// absorber, and linearized_interaction. No drive or entrance terms.
FluctuationRates linearized_rhs(const Fluctuation& f, const SteadyState& steady, const Model& model);

/// Noiseless Strang stepper for the doubled system, with the same splitting
/// as the mean-field stepper.
class LinearizedStepper {
 public:
  LinearizedStepper(const Model& model, const SteadyState& steady, double dt);
  void step(Fluctuation& f) const;
  double dt() const { return dt_; }

 private:
  void linear_half(Fluctuation& f) const;
  Model model_;
  SteadyState steady_;
  double dt_;
  std::vector<ComplexField> exp_a_, exp_abar_;
  ComplexField exp_b_, exp_bbar_;
  std::vector<RealField> absorb_a_;
  RealField absorb_b_;
};

}  // namespace cwom
