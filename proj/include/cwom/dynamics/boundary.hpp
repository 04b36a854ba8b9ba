#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cwom/core/field.hpp"
#include "cwom/dynamics/model.hpp"
#include "cwom/dynamics/rng.hpp"

namespace cwom {

/// Cell layout of an open waveguide on the periodic grid.
///
/// Right-movers enter at `right_entrance`, left-movers at `left_entrance`;
/// [interior_begin, interior_end) is free of sources and of the absorber,
/// which covers [absorber_begin, n).
struct OpenLayout {
  std::size_t right_entrance = 0;
  std::size_t left_entrance = 0;
  std::size_t interior_begin = 0;
  std::size_t interior_end = 0;
  std::size_t absorber_begin = 0;
};

OpenLayout open_layout(const Model& model);

/// Per-field damping rates sigma(x) of the far-end layer.
struct AbsorberProfile {
  std::vector<RealField> photons;
  RealField phonon;
};

/// sin^2 hump over the last `fraction` of the grid with peak `peak` (1/s).
RealField absorber_hump(const Grid1D& grid, double fraction, double peak);
AbsorberProfile make_absorber(const Model& model);
/// Fastest group velocity below half the Nyquist wavenumber.
double resolved_speed(const DispersionSpec& d, const Grid1D& g);
/// dx / v_max for open boundaries (the split absorber must see every wave
/// for several steps); infinity for periodic ones.
double transport_bound(const Model& model);

/// Multiplies every field by exp(-sigma(x) dt).
///
/// If `warnings` is given, fields with noticeable spectral weight above
/// half the Nyquist wavenumber get a note: the layer is only reflectionless
/// for resolved wavelengths.
FieldState absorbing_layer(const FieldState& state, const AbsorberProfile& profile, double dt,
                           std::vector<std::string>* warnings = nullptr);
std::optional<std::string> resolution_warning(const ComplexField& f, const Grid1D& grid);

/// One-way entrance of a photon branch.
struct Entrance {
  int direction = 0;  // +1 right-mover, -1 left-mover
  double velocity = 0.0;
  std::size_t cell = 0;
  /// Modes travelling in `direction`; empty when all of them do.
  std::vector<bool> mask;
  /// Spectrum of the coherent source for unit input amplitude:
  /// v / sqrt|v| times the transform of a unit-area Gaussian at `cell`.
  ComplexField source_spectrum;
};

/// Entrances of every branch (direction 0 for branches that are not open).
std::vector<Entrance> build_entrances(const Model& model);

/// Throws if branch j is not dispersion-free for the modes its entrance
/// launches (|k| <= k_max/2 in the envelope frame).
void check_entrance_dispersion(const Model& model, std::size_t j);

/// Sum of endfire inputs of branch j at time t, in the branch frame.
Complex entrance_amplitude(const Model& model, std::size_t j, double t);

/// Vacuum input noise a_in for one step: a one-cell source at each
/// entrance with E|a_in|^2 = 1/(2 dt), i.e. increment sqrt|v| a_in dt / dx.
void inject_boundary(FieldState& state, const Model& model, const std::vector<Entrance>& entrances,
                     double dt, Philox4x32& rng);

}  // namespace cwom
