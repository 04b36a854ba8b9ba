#pragma once

#include <vector>

#include "cwom/core/dispersion.hpp"
#include "cwom/core/field.hpp"

namespace cwom {

/// int f^* omega(-i d/dx) f dx, evaluated mode by mode.
double free_energy(const ComplexField& f, const DispersionSpec& dispersion, const Grid1D& grid);

/// Classical H / hbar (units 1/s) in the frame of the envelopes: free parts
/// with the in-frame dispersions plus the interaction -int h dx.
double hamiltonian(const FieldState& state, const std::vector<DispersionSpec>& photon_dispersions,
                   const DispersionSpec& phonon_dispersion, const InteractionModel& model);

}  // namespace cwom
