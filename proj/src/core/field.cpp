#include "cwom/core/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cwom {

FieldState::FieldState(const Grid1D& g, std::size_t branches)
    : grid(g),
      photons(branches, ComplexField(g.size())),
      photon_carriers(branches),
      phonon(g.size()) {}

bool FieldState::is_finite() const {
  auto finite = [](const ComplexField& f) {
    return std::all_of(f.begin(), f.end(), [](const Complex& v) {
      return std::isfinite(v.real()) && std::isfinite(v.imag());
    });
  };
  return std::all_of(photons.begin(), photons.end(), finite) && finite(phonon);
}

double FieldState::field_scale() const {
  double m = 0.0;
  for (const auto& f : photons)
    for (const auto& v : f) m = std::max(m, std::abs(v));
  for (const auto& v : phonon) m = std::max(m, 2.0 * std::abs(v));
  return m;
}

void FieldState::validate() const {
  if (photons.empty()) throw std::invalid_argument("FieldState: no photon branch");
  if (photon_carriers.size() != photons.size())
    throw std::invalid_argument("FieldState: one carrier per photon branch required");
  for (const auto& f : photons)
    if (f.size() != grid.size()) throw std::invalid_argument("FieldState: photon field size mismatch");
  if (phonon.size() != grid.size()) throw std::invalid_argument("FieldState: phonon field size mismatch");
}

}  // namespace cwom
