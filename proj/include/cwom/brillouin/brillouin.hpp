#pragma once

#include <string>
#include <vector>

#include "cwom/core/grid.hpp"

namespace cwom {

/// Two-branch scattering in the Brillouin limit: pump (branch 1) to Stokes
/// (branch 2) via a phonon of frequency Omega near the transition Omega0.
/// Velocities are magnitudes; spatial rates are per metre of propagation.
struct BrillouinParams {
  Complex g12;         // pump-enhanced coupling g0_12 * alpha1, Hz
  double g0_12 = 0.0;  // Hz m^1/2
  double v1 = 0.0, v2 = 0.0, vb = 0.0;  // m/s
  double Gamma = 0.0;   // 1/s
  double kappa2 = 0.0;  // 1/s
  double omega1 = 0.0, omega2 = 0.0;  // rad/s
  double Omega = 0.0, Omega0 = 0.0;   // rad/s

  double gamma2() const { return kappa2 / v2; }
  double gamma_b() const { return Gamma / vb; }
  /// |alpha1|^2 = P1 / (hbar omega1 v1).
  double pump_power() const;

  /// g12 = g0_12 sqrt(P1 / (hbar omega1 v1)); omega2 = omega1 - Omega0; Omega = Omega0.
  static BrillouinParams from_pump(double g0_12, double P1, double v1, double v2, double vb, double Gamma,
                                   double kappa2, double omega1, double Omega0);
  void validate() const;
};

/// G_B = 4 |g0_12|^2 / (v1 v2 Gamma hbar omega1), 1/(W m).
double brillouin_gain(double g0_12, double v1, double v2, double Gamma, double omega1);
double g0_from_gain(double G_B, double v1, double v2, double Gamma, double omega1);

/// gamma3(Omega) = -(1/v2) |g0_12|^2 / (Omega - Omega0 - i Gamma/2).
Complex nonlinear_susceptibility(double Omega, const BrillouinParams& p);
/// -2 Im gamma3(Omega) / (hbar omega1 v1).
double gain_from_susceptibility(double Omega, const BrillouinParams& p);
/// G_B (Gamma/2)^2 / ((Omega - Omega0)^2 + (Gamma/2)^2), written out directly.
double gain_spectrum(double Omega, const BrillouinParams& p);

/// Local phonon response and the photon-only spatial ODE
/// d a2/dx = (amplitude_gain - gamma2/2) a2 (+ i phase_rate a2).
struct AdiabaticResult {
  double amplitude_gain = 0.0;  // Re |g12|^2 / (v2 (Gamma/2 + i dOmega)), 1/m
  double phase_rate = 0.0;      // Im part of the same, 1/m
  double net_amplitude_rate = 0.0;  // amplitude_gain - gamma2/2
  double power_slope = 0.0;         // 2 net_amplitude_rate = G_B(Omega) P1 - gamma2
  Complex phonon_transfer;          // b = phonon_transfer * conj(a2)
  double decay_ratio = 0.0;         // gamma_b / gamma2
  ComplexField phonon;              // reconstructed local phonon field
  std::vector<std::string> warnings;
};

/// Rejects gamma_b / gamma2 < 10 and warns below 100.
AdiabaticResult adiabatic_eliminate(const BrillouinParams& p);
AdiabaticResult adiabatic_eliminate(const ComplexField& a2, const BrillouinParams& p);

/// The amplitude gain as printed in the literature form |g12|^2 / (v1 Gamma);
/// kept for reference, see the README.
double printed_gain_coefficient(const BrillouinParams& p);

/// Travelling-wave powers: hbar omega v |a|^2.
double wave_power(double omega, double v, Complex amplitude);
/// P_b = hbar Omega vb |b|^2.
double phonon_power(Complex b, const BrillouinParams& p);

/// Full-solver measurement of the small-signal Stokes growth.
struct GainRunConfig {
  std::size_t n_points = 256;
  /// Interior length in units of the predicted power gain length.
  double span_gain_lengths = 4.0;
  /// Seed Stokes power as a fraction of P1.
  double seed_fraction = 1e-6;
  /// Stokes counter-propagating to the pump (backward scattering).
  bool counter_propagating = false;
  /// Simulated time in units of 1/Gamma, on top of three transit times.
  double settle_decay_times = 25.0;
  /// Step as a fraction of 1/Gamma (also capped by the stability bound).
  double dt_fraction = 0.05;
  /// Fit starts this many phonon decay lengths into the interior.
  double skip_decay_lengths = 20.0;
};

struct GainRunResult {
  double measured_slope = 0.0;   // d ln P2 / ds along the Stokes direction, 1/m
  double predicted_slope = 0.0;  // G_B P1 - gamma2
  double relative_error = 0.0;
  double pump_depletion = 0.0;   // 1 - P1(end)/P1(start) over the interior
  double fit_gain_lengths = 0.0;
  std::size_t steps = 0;
  double dt = 0.0;
  RealField x, P1, P2, Pb;
};

GainRunResult simulate_gain(const BrillouinParams& p, const GainRunConfig& cfg = {});

}  // namespace cwom
