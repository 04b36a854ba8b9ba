#pragma once

#include <vector>

#include "cwom/core/coupling.hpp"
#include "cwom/core/grid.hpp"

namespace cwom {

/// Photon and phonon fields on a shared grid.
///
/// Fields are normalized so that sum |a_i|^2 dx is the photon number
/// (units m^-1/2). Each field is stored as an envelope relative to its
/// carrier; a lab-frame field has a zero carrier. Branch 0 is "the" photon
/// field of single-branch models.
struct FieldState {
  Grid1D grid;
  std::vector<ComplexField> photons;
  std::vector<Carrier> photon_carriers;
  ComplexField phonon;
  Carrier phonon_carrier;
  double time = 0.0;

  FieldState() = default;
  /// Zero fields for `branches` photon branches, all in the lab frame.
  FieldState(const Grid1D& g, std::size_t branches = 1);

  ComplexField& a(std::size_t j = 0) { return photons.at(j); }
  const ComplexField& a(std::size_t j = 0) const { return photons.at(j); }
  ComplexField& b() { return phonon; }
  const ComplexField& b() const { return phonon; }

  std::size_t branches() const { return photons.size(); }
  double photon_number(std::size_t j = 0) const { return norm2(photons.at(j), grid); }
  double phonon_number() const { return norm2(phonon, grid); }
  bool is_finite() const;
  /// Largest |a| or |u| over all fields.
  double field_scale() const;
  /// Throws if shapes are inconsistent.
  void validate() const;
};

/// Time derivatives of the photon branches and the phonon field.
struct FieldDerivatives {
  std::vector<ComplexField> da;
  ComplexField db;
};

}  // namespace cwom
