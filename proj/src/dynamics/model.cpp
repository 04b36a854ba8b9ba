#include "cwom/dynamics/model.hpp"

#include <cmath>
#include <stdexcept>

#include "cwom/dynamics/boundary.hpp"

namespace cwom {

double BathSpec::thermal_occupation() const {
  if (n_th) return *n_th;
  if (temperature) {
    if (*temperature == 0.0) return 0.0;
    return 1.0 / std::expm1(kHbar * omega_ref / (kBoltzmann * *temperature));
  }
  return 0.0;
}

void BathSpec::validate() const {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw std::invalid_argument("BathSpec: kappa must be >= 0");
  if (!(gamma_mech >= 0.0) || !std::isfinite(gamma_mech))
    throw std::invalid_argument("BathSpec: gamma_mech must be >= 0");
  if (n_th && temperature)
    throw std::invalid_argument("BathSpec: give either n_th or temperature, not both");
  if (n_th && !(*n_th >= 0.0)) throw std::invalid_argument("BathSpec: n_th must be >= 0");
  if (temperature) {
    if (!(*temperature >= 0.0)) throw std::invalid_argument("BathSpec: temperature must be >= 0");
    if (*temperature > 0.0 && !(omega_ref > 0.0))
      throw std::invalid_argument("BathSpec: temperature requires omega_ref > 0");
  }
}

std::optional<double> DriveSpec::power_W() const {
  if (mode != DriveMode::endfire) return std::nullopt;
  return kHbar * omega_L * std::norm(alpha_in);
}

double DriveSpec::ramp(double t) const {
  if (ramp_time <= 0.0 || t >= ramp_time) return 1.0;
  if (t <= 0.0) return 0.0;
  const double s = std::sin(0.5 * kPi * t / ramp_time);
  return s * s;
}

void DriveSpec::validate() const {
  if (!std::isfinite(alpha_in.real()) || !std::isfinite(alpha_in.imag()))
    throw std::invalid_argument("DriveSpec: non-finite alpha_in");
  if (!(ramp_time >= 0.0)) throw std::invalid_argument("DriveSpec: ramp_time must be >= 0");
  if (mode == DriveMode::side) {
    if (!(kappa_ex >= 0.0)) throw std::invalid_argument("DriveSpec: kappa_ex must be >= 0");
    if (!profile) throw std::invalid_argument("DriveSpec: side drive needs a profile");
  }
}

double Model::photon_kappa(std::size_t j) const {
  const auto& k = photons.at(j).kappa;
  return k ? *k : bath.kappa;
}

DispersionSpec Model::frame_dispersion(std::size_t j) const {
  const PhotonBranch& p = photons.at(j);
  return p.dispersion.shifted(p.carrier.k, p.carrier.omega);
}

DispersionSpec Model::frame_phonon_dispersion() const {
  return phonon_dispersion.shifted(phonon_carrier.k, phonon_carrier.omega);
}

std::vector<DispersionSpec> Model::frame_photon_dispersions() const {
  std::vector<DispersionSpec> out;
  for (std::size_t j = 0; j < photons.size(); ++j) out.push_back(frame_dispersion(j));
  return out;
}

double Model::photon_velocity(std::size_t j) const {
  const PhotonBranch& p = photons.at(j);
  return p.dispersion.group_velocity_at(p.carrier.k);
}

double Model::phonon_velocity() const { return phonon_dispersion.group_velocity_at(phonon_carrier.k); }

FieldState Model::vacuum() const {
  FieldState s(grid, photons.size());
  for (std::size_t j = 0; j < photons.size(); ++j) s.photon_carriers[j] = photons[j].carrier;
  s.phonon_carrier = phonon_carrier;
  return s;
}

void Model::validate() const {
  if (grid.size() == 0) throw std::invalid_argument("Model: grid not set");
  if (photons.empty()) throw std::invalid_argument("Model: at least one photon branch required");
  if (interaction.branches() != photons.size())
    throw std::invalid_argument("Model: interaction model must have one coupling set per photon branch");
  interaction.validate();
  bath.validate();
  for (std::size_t j = 0; j < photons.size(); ++j) {
    frame_dispersion(j).values_on(grid);
    const double k = photon_kappa(j);
    if (!(k >= 0.0)) throw std::invalid_argument("Model: photon kappa must be >= 0");
  }
  frame_phonon_dispersion().values_on(grid);
  if (boundary.kind == BoundaryKind::open) {
    if (!(boundary.absorber_fraction > 0.0 && boundary.absorber_fraction <= 0.1))
      throw std::invalid_argument("Model: absorber must occupy (0, 10%] of the grid");
    if (!(boundary.absorber_strength >= 0.0))
      throw std::invalid_argument("Model: absorber strength must be >= 0");
    if (!(boundary.source_width_cells > 0.0))
      throw std::invalid_argument("Model: source width must be > 0");
  }
  for (const auto& d : drives) {
    d.validate();
    if (d.branch >= photons.size()) throw std::invalid_argument("Model: drive targets a missing branch");
    if (d.mode == DriveMode::endfire) {
      if (boundary.kind != BoundaryKind::open)
        throw std::invalid_argument("Model: endfire drive requires open boundaries");
      check_entrance_dispersion(*this, d.branch);
    }
  }
}

Model Model::single(const Grid1D& grid, const DispersionSpec& photon, const DispersionSpec& phonon,
                    const CouplingSet& couplings) {
  Model m;
  m.grid = grid;
  m.photons = {PhotonBranch{"a", photon, {}, std::nullopt}};
  m.phonon_dispersion = phonon;
  m.interaction = InteractionModel::single(couplings);
  return m;
}

}  // namespace cwom
