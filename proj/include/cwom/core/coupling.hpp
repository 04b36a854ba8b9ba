#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cwom/core/grid.hpp"

namespace cwom {

/// Parity sector of the real-space coupling terms. The signature +/- marks
/// whether a field enters with a spatial derivative (a^dag, a, u order).
enum class Sector { even, odd, mixed };

std::string to_string(Sector s);

/// The six leading-order real-space couplings of a single optical branch to
/// the displacement u = b + b^dag. Hamiltonian density is -hbar times
///
///   even: g_ppp a^dag a u + g_mmp (da^dag)(da) u + [g_mpm (da^dag) a (du) + h.c.]
///   odd:  g_ppm a^dag a (du) + [g_mpp (da^dag) a u + h.c.] + g_mmm (da^dag)(da)(du)
///
/// Units: g_ppp Hz m^1/2, g_ppm/g_mpp Hz m^3/2, g_mmp/g_mpm Hz m^5/2, g_mmm Hz m^7/2.
struct CouplingSet {
  double g_ppp = 0.0;
  double g_mmp = 0.0;
  Complex g_mpm{0.0, 0.0};
  double g_ppm = 0.0;
  Complex g_mpp{0.0, 0.0};
  double g_mmm = 0.0;
  Sector sector = Sector::even;
  bool broken_inversion = false;

  static CouplingSet simple(double g0) {
    CouplingSet c;
    c.g_ppp = g0;
    return c;
  }

  bool has_even_terms() const { return g_ppp != 0.0 || g_mmp != 0.0 || g_mpm != Complex{}; }
  bool has_odd_terms() const { return g_ppm != 0.0 || g_mpp != Complex{} || g_mmm != 0.0; }
  bool is_zero() const { return !has_even_terms() && !has_odd_terms(); }
  /// Largest |g| * k^n over the derivative count n of each term.
  double rate_scale(double k_max) const;

  /// Throws std::invalid_argument if the sector bookkeeping is inconsistent.
  void validate() const;
};

/// Carrier (k, omega) of an envelope: lab field = env * exp(i (k x - omega t)).
struct Carrier {
  double k = 0.0;
  double omega = 0.0;
  bool is_lab() const { return k == 0.0 && omega == 0.0; }
};

/// All interaction terms of a multi-branch model.
///
/// `intra[j]` holds the Table-of-terms couplings within photon branch j.
/// `inter(j, l)` is the simple (non-derivative) coupling g0(j,l) for
/// scattering from branch l to j; it must be Hermitian with a zero diagonal
/// (diagonal simple coupling lives in intra[j].g_ppp).
struct InteractionModel {
  std::vector<CouplingSet> intra;
  std::vector<Complex> inter;  // row-major n x n, empty for a single branch
  /// Terms whose residual carrier wavenumber exceeds this fraction of the
  /// grid Nyquist wavenumber cannot be represented and are dropped.
  double band_fraction = 0.5;
  /// Optionally drop terms whose residual carrier frequency exceeds this.
  std::optional<double> rwa_cutoff;

  std::size_t branches() const { return intra.size(); }
  Complex g_inter(std::size_t j, std::size_t l) const {
    return inter.empty() ? Complex{} : inter[j * intra.size() + l];
  }
  void validate() const;

  static InteractionModel single(const CouplingSet& c) {
    InteractionModel m;
    m.intra = {c};
    return m;
  }
};

}  // namespace cwom
