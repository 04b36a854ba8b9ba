#include "cwom/core/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cwom/core/spectral.hpp"

namespace cwom {
namespace {

double binomial(std::size_t n, std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

}  // namespace

DispersionSpec DispersionSpec::polynomial(std::vector<double> coeffs, double reference_k) {
  for (double c : coeffs)
    if (!std::isfinite(c)) throw std::invalid_argument("DispersionSpec: non-finite coefficient");
  DispersionSpec d;
  d.kind_ = Kind::polynomial;
  d.coeffs_ = std::move(coeffs);
  d.reference_k_ = reference_k;
  return d;
}

DispersionSpec DispersionSpec::linear(double omega0, double velocity) {
  return polynomial({omega0, velocity});
}

DispersionSpec DispersionSpec::tabulated(const Grid1D& grid, std::vector<double> values,
                                         double reference_k) {
  if (values.size() != grid.size())
    throw std::invalid_argument("DispersionSpec: table size does not match grid");
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("DispersionSpec: non-finite table value");
  DispersionSpec d;
  d.kind_ = Kind::tabulated;
  d.table_ = std::move(values);
  d.table_dk_ = grid.dk();
  d.table_n_ = grid.size();
  d.reference_k_ = reference_k;
  return d;
}

double DispersionSpec::operator()(double k) const {
  if (kind_ == Kind::polynomial) {
    double r = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * k + *it;
    return r;
  }
  const long n = static_cast<long>(table_n_);
  long m = std::lround(k / table_dk_) % n;
  if (m < 0) m += n;
  return table_[static_cast<std::size_t>(m)];
}

RealField DispersionSpec::values_on(const Grid1D& grid) const {
  if (kind_ == Kind::tabulated && (grid.size() != table_n_ || std::abs(grid.dk() - table_dk_) > 1e-12 * table_dk_))
    throw std::invalid_argument("DispersionSpec: tabulated values belong to a different grid");
  RealField out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = (*this)(grid.k(i));
  for (double v : out)
    if (!std::isfinite(v)) throw std::invalid_argument("DispersionSpec: non-finite value on grid");
  return out;
}

double DispersionSpec::group_velocity_at(double k) const {
  if (kind_ == Kind::polynomial) {
    double r = 0.0;
    for (std::size_t n = coeffs_.size(); n-- > 1;) r = r * k + static_cast<double>(n) * coeffs_[n];
    return r;
  }
  return ((*this)(k + table_dk_) - (*this)(k - table_dk_)) / (2.0 * table_dk_);
}

double DispersionSpec::max_abs_on(const Grid1D& grid) const {
  double m = 0.0;
  for (double v : values_on(grid)) m = std::max(m, std::abs(v));
  return m;
}

DispersionSpec DispersionSpec::shifted(double k_ref, double omega_ref) const {
  if (kind_ == Kind::polynomial) {
    std::vector<double> c(coeffs_.size(), 0.0);
    for (std::size_t m = 0; m < coeffs_.size(); ++m)
      for (std::size_t n = m; n < coeffs_.size(); ++n)
        c[m] += coeffs_[n] * binomial(n, m) * std::pow(k_ref, static_cast<double>(n - m));
    if (c.empty()) c.push_back(0.0);
    c[0] -= omega_ref;
    return polynomial(std::move(c), reference_k_ - k_ref);
  }
  const double m = k_ref / table_dk_;
  if (std::abs(m - std::round(m)) > 1e-9 * std::max(1.0, std::abs(m)))
    throw std::invalid_argument("DispersionSpec: tabulated shift must be commensurate with the grid");
  DispersionSpec d = *this;
  const long n = static_cast<long>(table_n_);
  for (long i = 0; i < n; ++i) {
    // new(k_i) = old(k_i + k_ref)
    const long bin = i < n / 2 ? i : i - n;
    d.table_[static_cast<std::size_t>(i)] = (*this)((static_cast<double>(bin) + std::round(m)) * table_dk_) - omega_ref;
  }
  d.reference_k_ = reference_k_ - k_ref;
  return d;
}

bool DispersionSpec::is_linear_near(double k, double k_window, double rel_tol) const {
  const double v = group_velocity_at(k);
  const double scale = std::max(std::abs(v) * k_window, 1e-300);
  for (int s = -4; s <= 4; ++s) {
    const double dk = k_window * s / 4.0;
    const double lin = (*this)(k) + v * dk;
    if (std::abs((*this)(k + dk) - lin) > rel_tol * scale + 1e-12 * std::abs((*this)(k))) return false;
  }
  return true;
}

ComplexField apply_dispersion(const ComplexField& field, const DispersionSpec& dispersion, double dt,
                              const Grid1D& grid) {
  if (!(dt >= 0.0)) throw std::invalid_argument("apply_dispersion: dt must be non-negative");
  if (field.size() != grid.size())
    throw std::invalid_argument("apply_dispersion: field length does not match grid");
  const RealField w = dispersion.values_on(grid);
  ComplexField F = fft(field);
  for (std::size_t i = 0; i < F.size(); ++i) F[i] *= std::polar(1.0, -w[i] * dt);
  return ifft(F);
}

}  // namespace cwom
