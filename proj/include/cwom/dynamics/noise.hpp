#pragma once

#include "cwom/core/grid.hpp"
#include "cwom/dynamics/rng.hpp"

namespace cwom {

/// Langevin input term sqrt(rate) * xi for one Euler-Maruyama step.
///
/// xi is complex Gaussian, independent per cell, with symmetrized variance
/// E|xi|^2 = (occupation + 1/2) / (dx dt).
ComplexField sample_noise_field(const Grid1D& grid, double rate, double occupation, double dt,
                                Philox4x32& rng);

}  // namespace cwom
