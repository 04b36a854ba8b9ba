#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace cwom {

using Complex = std::complex<double>;
using ComplexField = std::vector<Complex>;
using RealField = std::vector<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kHbar = 1.054571817e-34;   // J s
inline constexpr double kBoltzmann = 1.380649e-23; // J/K

/// Uniform periodic grid on [0, n_points*dx).
///
/// The wavenumber axis uses the standard DFT ordering: k[0] = 0, positive
/// wavenumbers up to the Nyquist bin at n/2 (stored as -pi/dx), then the
/// negative ones.
class Grid1D {
 public:
  Grid1D() = default;
  Grid1D(std::size_t n_points, double dx);

  std::size_t size() const { return n_; }
  double dx() const { return dx_; }
  double length() const { return static_cast<double>(n_) * dx_; }
  double x(std::size_t i) const { return static_cast<double>(i) * dx_; }
  double k(std::size_t i) const { return k_[i]; }
  const RealField& k_axis() const { return k_; }
  double dk() const { return 2.0 * kPi / length(); }
  double k_max() const { return kPi / dx_; }

  /// Wavenumber bin index for k (rounded); k must be commensurate with dk.
  long bin_of(double k) const;
  bool is_commensurate(double k, double rel_tol = 1e-9) const;

  bool operator==(const Grid1D& other) const { return n_ == other.n_ && dx_ == other.dx_; }

 private:
  std::size_t n_ = 0;
  double dx_ = 0.0;
  RealField k_;
};

/// Sum |f|^2 dx.
double norm2(const ComplexField& f, const Grid1D& grid);

}  // namespace cwom
