#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cwom/dynamics/model.hpp"

namespace cwom {

/// Noiseless cw steady state in the rotating frames of the model.
struct SteadyState {
  FieldState fields;
  std::vector<ComplexField> alpha;  // <a_j(x)>, m^-1/2
  ComplexField beta;                // <b(x)>, m^-1/2
  std::vector<ComplexField> g_lin;  // g0_j alpha_j, Hz (g0_j = intra[j].g_ppp)
  std::vector<RealField> g_beta;    // g0_j (beta + beta^*), Hz
  double residual = 0.0;            // max |d/dt| / (field scale * relaxation rate)
  std::vector<double> history;      // residual at each check
  std::size_t steps = 0;
  std::string label;

  /// Wraps given fields (e.g. an analytic solution) and evaluates the residual.
  static SteadyState from_fields(const Model& model, const FieldState& fields, std::string label = "given");
};

struct SteadyConfig {
  double dt = 0.0;  // 0: min(0.9 stability bound, 0.1 / relaxation rate)
  double tol = 1e-10;
  /// Switch from Strang marching to the exact-fixed-point polish below this.
  double march_tol = 1e-6;
  std::size_t max_steps = 2000000;
  std::size_t check_every = 20;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> history)
      : std::runtime_error(what), history_(std::move(history)) {}
  const std::vector<double>& history() const { return history_; }

 private:
  std::vector<double> history_;
};

/// Slowest relaxation scale used to normalise residuals: max(kappa_j, Gamma).
double relaxation_rate(const Model& model);

/// max |mean-field d/dt| over all fields, divided by field scale and relaxation rate.
double steady_residual(const Model& model, const FieldState& state);

/// Marches from vacuum with the model's (ramped) cw drives, then polishes
/// with exponential Euler, whose fixed points are exact zeros of the
/// mean-field right-hand side. Several solutions may exist; the one reached
/// from vacuum is returned.
SteadyState find_steady_state(const Model& model, const SteadyConfig& cfg = {});

}  // namespace cwom
