#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "cwom/core/coupling.hpp"
#include "cwom/core/dispersion.hpp"
#include "cwom/core/field.hpp"
#include "cwom/dynamics/model.hpp"

namespace cwom {

/// Tight-binding optomechanical array.
///
///   H/hbar = sum_j [omega_a a_j^dag a_j + omega_b b_j^dag b_j]
///          - sum_{j,l} [J_l a_{j+l}^dag a_j + K_l b_{j+l}^dag b_j + h.c.]
///          - g0_site sum_j a_j^dag a_j u_j
///          - g0_link sum_j (a_{j+1}^dag a_j + h.c.) u_j
///
/// With link coupling u_j sits on the link between sites j and j+1.
struct ArrayConfig {
  std::size_t n_sites = 0;
  double dx_lattice = 0.0;     // m
  std::map<int, double> J;     // hop distance -> Hz
  std::map<int, double> K;
  double omega_a = 0.0;        // on-site, rad/s
  double omega_b = 0.0;
  double g0_site = 0.0;        // Hz
  double g0_link = 0.0;        // Hz
  double kappa = 0.0;          // 1/s per site
  double Gamma = 0.0;
  double n_th = 0.0;
  Sampling sampling = Sampling::none;
  bool periodic = true;

  void validate() const;
};

struct ArrayState {
  ComplexField a, b;
  double time = 0.0;

  double photon_number() const;
  double phonon_number() const;
};

/// omega(k) = -sum_l J_l exp(-i k l dx) over signed hop distances. Throws if
/// the result has an imaginary part (non-Hermitian hopping).
RealField band_structure(const std::map<int, Complex>& J_signed, double dx_lattice, const RealField& k);
/// Signed Hermitian completion {l: J_l, -l: J_l} of real hops.
std::map<int, Complex> hermitian_hops(const std::map<int, double>& J);

/// omega_onsite - 2 sum J_l + (sum J_l l^2 dx^2) k^2: the long-wavelength band.
DispersionSpec continuum_dispersion(const std::map<int, double>& J, double dx_lattice, double omega_onsite);

/// g_ppp = g0 sqrt(dx).
CouplingSet local_continuum_couplings(double g0_site, double dx_lattice);
/// g_ppp = 2 g0 sqrt(dx), g_mmp = -g0 sqrt(dx) dx^2, g_mpm = -g0 sqrt(dx) dx^2 / 4.
CouplingSet link_continuum_couplings(double g0_link, double dx_lattice);

/// Continuum model with the mapped dispersions and couplings on a grid with
/// dx = dx_lattice (periodic arrays only).
Model continuum_model(const ArrayConfig& cfg);

/// a(x_j) = a_j / sqrt(dx); photon number preserved.
FieldState to_continuum(const ArrayState& s, double dx_lattice);
ArrayState from_continuum(const FieldState& f);

/// Coherent site drive: d a_j/dt += sqrt(kappa_ex) * amplitude(j, t).
struct ArrayDrive {
  double kappa_ex = 0.0;
  std::function<Complex(std::size_t, double)> amplitude;
};

struct ArrayRunConfig {
  double dt = 0.0;
  std::size_t steps = 0;
  std::size_t output_every = 1;
  std::uint64_t seed = 0;
  std::uint64_t trajectory = 0;
};

struct ArrayTrajectory {
  std::vector<double> times;
  std::vector<double> photon_number, phonon_number;
  ArrayState final_state;
};

/// Mean-field (or Wigner-sampled) array dynamics with the splitting of the
/// continuum stepper: on-site rotation, damping and, for periodic arrays,
/// the hopping are exact; the rest is a fourth-order Runge-Kutta substep.
ArrayTrajectory simulate_array(const ArrayConfig& cfg, const ArrayState& initial, const ArrayRunConfig& run,
                               const ArrayDrive& drive = {});

/// Interaction energy sum_j [g0_site |a_j|^2 + g0_link 2 Re(a_{j+1}^* a_j)] u_j.
double array_interaction_energy(const ArrayConfig& cfg, const ArrayState& s);

/// Lattice-vs-continuum convergence study on a periodic domain: photon band
/// D k^2, flat phonons at Omega0, local or link coupling mapped to the
/// continuum constant g_tilde, smooth multi-mode initial fields.
struct ArrayConvergenceSpec {
  std::size_t n_min = 16;
  int halvings = 3;
  double length = 2.0 * kPi;  // m
  double D = 0.25;            // m^2/s
  double Omega0 = 1.0;        // rad/s
  double g_tilde = 0.5;       // Hz m^1/2
  double duration = 2.0;      // s
  std::size_t fine_points = 256;
  bool link = false;
};

struct ArrayConvergenceResult {
  std::vector<std::size_t> sites;
  std::vector<double> dx, error;  // relative L2 error at the final time
  double order = 0.0;             // least-squares slope of log error vs log dx
};

ArrayConvergenceResult array_convergence(const ArrayConvergenceSpec& spec);

}  // namespace cwom
