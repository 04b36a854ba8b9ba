#pragma once

#include <functional>

#include "cwom/core/grid.hpp"

namespace cwom {

/// Unnormalized forward DFT (sum_j f_j e^{-i k x_j}).
ComplexField fft(const ComplexField& f);
/// Inverse DFT including the 1/N factor, so ifft(fft(f)) == f.
ComplexField ifft(const ComplexField& F);

/// Multiply the spectrum of `field` by m(k) and transform back.
ComplexField apply_multiplier(const ComplexField& field, const Grid1D& grid,
                              const std::function<Complex(double)>& m);

/// (d/dx + i k_shift)^order applied spectrally.
///
/// The shift is the carrier wavenumber of an envelope: for f = env * e^{i k_c x}
/// the lab derivative is e^{i k_c x} (d/dx + i k_c) env. For odd orders with no
/// shift the Nyquist bin is zeroed so real fields stay real.
/// Orders above 2 are rejected.
ComplexField spectral_derivative(const ComplexField& field, const Grid1D& grid, int order,
                                 double k_shift = 0.0);

/// Cyclic reversal x -> -x, i.e. index i -> (n - i) mod n.
ComplexField reversed(const ComplexField& f);

}  // namespace cwom
