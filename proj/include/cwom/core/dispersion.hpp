#pragma once

#include <vector>

#include "cwom/core/grid.hpp"

namespace cwom {

/// A dispersion relation omega(k) in rad/s, either a polynomial in k or a
/// table of values on a grid's k-axis.
class DispersionSpec {
 public:
  enum class Kind { polynomial, tabulated };

  DispersionSpec() = default;  // omega == 0

  /// omega(k) = sum_n coeffs[n] k^n.
  static DispersionSpec polynomial(std::vector<double> coeffs, double reference_k = 0.0);
  /// omega(k) = omega0 + velocity * k.
  static DispersionSpec linear(double omega0, double velocity);
  /// Values aligned with grid.k_axis().
  static DispersionSpec tabulated(const Grid1D& grid, std::vector<double> values,
                                  double reference_k = 0.0);

  Kind kind() const { return kind_; }
  const std::vector<double>& coefficients() const { return coeffs_; }
  double reference_k() const { return reference_k_; }

  /// omega at an arbitrary k (tabulated: nearest bin of the stored axis).
  double operator()(double k) const;
  RealField values_on(const Grid1D& grid) const;
  double group_velocity_at(double k) const;
  double max_abs_on(const Grid1D& grid) const;

  /// omega'(k) = omega(k + k_ref) - omega_ref: the dispersion seen by an
  /// envelope in a frame rotating at (omega_ref, k_ref).
  DispersionSpec shifted(double k_ref, double omega_ref) const;

  /// True if omega is linear in k (to tolerance) over |k| <= k_window.
  bool is_linear_near(double k, double k_window, double rel_tol = 1e-9) const;

 private:
  Kind kind_ = Kind::polynomial;
  std::vector<double> coeffs_;
  double reference_k_ = 0.0;
  // tabulated
  RealField table_;
  double table_dk_ = 0.0;
  std::size_t table_n_ = 0;
};

/// Free evolution over dt: each mode multiplied by exp(-i omega(k) dt).
ComplexField apply_dispersion(const ComplexField& field, const DispersionSpec& dispersion, double dt,
                              const Grid1D& grid);

}  // namespace cwom
