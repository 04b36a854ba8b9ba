#include "cwom/core/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cwom {

Grid1D::Grid1D(std::size_t n_points, double dx) : n_(n_points), dx_(dx) {
  if (n_points < 2 || (n_points & (n_points - 1)) != 0)
    throw std::invalid_argument("Grid1D: n_points must be a power of two >= 2, got " +
                                std::to_string(n_points));
  if (!(dx > 0.0) || !std::isfinite(dx))
    throw std::invalid_argument("Grid1D: dx must be positive and finite");

  k_.resize(n_);
  const double dk = 2.0 * kPi / length();
  const long half = static_cast<long>(n_ / 2);
  for (std::size_t i = 0; i < n_; ++i) {
    long m = static_cast<long>(i);
    if (m >= half) m -= static_cast<long>(n_);
    k_[i] = dk * static_cast<double>(m);
  }
}

long Grid1D::bin_of(double k) const { return std::lround(k / dk()); }

bool Grid1D::is_commensurate(double k, double rel_tol) const {
  const double m = k / dk();
  return std::abs(m - std::round(m)) <= rel_tol * std::max(1.0, std::abs(m));
}

double norm2(const ComplexField& f, const Grid1D& grid) {
  double s = 0.0;
  for (const auto& v : f) s += std::norm(v);
  return s * grid.dx();
}

}  // namespace cwom
