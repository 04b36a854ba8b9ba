#pragma once

#include <vector>

#include "cwom/core/grid.hpp"

namespace cwom {

/// Forward intra-branch scattering off a coherent, dispersionless phonon
/// wave: a pump entering at x = 0 leaves phase-modulated with sidebands at
/// omega_L + n Omega0.
struct CombParams {
  double velocity = 2e8;           // photon group velocity, m/s
  double omega_L = 2.0 * kPi * 193.5e12;
  double Omega0 = 2.0 * kPi * 100e6;
  double g0 = 1e3;                 // Hz m^1/2
  double beta = 0.0;               // uniform phonon amplitude at t = 0, m^-1/2 (0: modulation index 1)
  double power = 1e-3;             // W
  double length = 0.0;             // interior length, m (0: half a phonon period of transit)
  std::size_t n_points = 512;
  std::size_t periods = 20;        // averaging window in phonon periods
  int sidebands = 2;
};

struct CombResult {
  std::vector<int> order;          // -N..N
  std::vector<double> power;       // W, per sideband at the exit
  std::vector<double> bessel;      // J_n(m)^2 P for the unperturbed phase modulation
  double modulation_index = 0.0;
  double transit_time = 0.0;
  /// max over 1 <= n <= N of |P_n - P_-n| / max(P_n, P_-n).
  double max_asymmetry = 0.0;
  std::size_t steps = 0;
};

CombResult forward_comb(const CombParams& p);

}  // namespace cwom
