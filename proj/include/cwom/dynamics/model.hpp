#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cwom/core/coupling.hpp"
#include "cwom/core/dispersion.hpp"
#include "cwom/core/field.hpp"

namespace cwom {

enum class Sampling { none, wigner };

/// Dissipation and bath occupation.
///
/// Give either `n_th` or `temperature`; with a temperature the occupation is
/// the Bose factor at the fixed phonon frequency `omega_ref`.
struct BathSpec {
  double kappa = 0.0;       // photon energy decay, 1/s
  double gamma_mech = 0.0;  // phonon decay, 1/s
  std::optional<double> n_th;
  std::optional<double> temperature;  // K
  double omega_ref = 0.0;             // rad/s
  Sampling sampling = Sampling::none;

  double thermal_occupation() const;
  void validate() const;
};

enum class DriveMode { endfire, side };

/// Coherent drive of one photon branch.
///
/// endfire: flux-normalized input amplitude alpha_in (s^-1/2) at the
/// entrance of the branch, i.e. x = 0 for right-movers and the far end of
/// the interior for left-movers. The lab input is alpha_in e^{-i omega_L t}.
/// side: sqrt(kappa_ex) * profile(x, t) added to d a/dt, where the lab input
/// is profile(x, t) e^{i (k_c x - omega_L t)} for a branch carrier k_c.
struct DriveSpec {
  DriveMode mode = DriveMode::endfire;
  std::size_t branch = 0;
  Complex alpha_in{0.0, 0.0};
  double omega_L = 0.0;
  double k_L = 0.0;
  double kappa_ex = 0.0;
  std::function<Complex(double, double)> profile;
  /// Smooth sin^2 turn-on time (0 = switched on at t = 0).
  double ramp_time = 0.0;

  /// Laser power hbar omega_L |alpha_in|^2 for endfire drives.
  std::optional<double> power_W() const;
  double ramp(double t) const;
  void validate() const;
};

enum class BoundaryKind { periodic, open };

/// Open boundaries: one-way sources at each entrance and a damping layer at
/// the far end of the grid that swallows everything leaving the interior.
struct BoundarySpec {
  BoundaryKind kind = BoundaryKind::periodic;
  double absorber_fraction = 0.1;
  /// Peak damping rate in 1/s; 0 picks 40 v_max / width per field, with
  /// v_max the fastest group velocity below half the Nyquist wavenumber.
  double absorber_strength = 0.0;
  /// Gaussian width of the coherent entrance source, in cells.
  double source_width_cells = 2.0;
  /// Vacuum noise enters through the entrances when sampling is wigner.
  bool inject_noise = true;
};

struct PhotonBranch {
  std::string label;
  DispersionSpec dispersion;  // lab frame
  Carrier carrier;
  std::optional<double> kappa;  // overrides bath.kappa
};

/// Everything but the fields: grid, dispersions, frames, couplings, bath,
/// drives and boundary treatment.
struct Model {
  Grid1D grid;
  std::vector<PhotonBranch> photons;
  DispersionSpec phonon_dispersion;
  Carrier phonon_carrier;
  InteractionModel interaction;
  BathSpec bath;
  std::vector<DriveSpec> drives;
  BoundarySpec boundary;

  std::size_t branches() const { return photons.size(); }
  double photon_kappa(std::size_t j) const;
  /// Dispersion seen by the envelope of branch j (or the phonon).
  DispersionSpec frame_dispersion(std::size_t j) const;
  DispersionSpec frame_phonon_dispersion() const;
  std::vector<DispersionSpec> frame_photon_dispersions() const;
  /// Envelope group velocity of branch j at its carrier.
  double photon_velocity(std::size_t j) const;
  double phonon_velocity() const;

  /// Zero fields carrying the model's carriers.
  FieldState vacuum() const;
  void validate() const;

  static Model single(const Grid1D& grid, const DispersionSpec& photon, const DispersionSpec& phonon,
                      const CouplingSet& couplings);
};

}  // namespace cwom
