#pragma once

#include <array>
#include <string>
#include <vector>

#include "cwom/core/grid.hpp"

namespace cwom {

using Matrix2c = std::array<std::array<Complex, 2>, 2>;
using Vector2c = std::array<Complex, 2>;

/// Spatial evolution d/dx (a2, b) = M (a2, b) of the coherent-phonon limit.
struct SwapParams {
  Complex g12;     // Hz
  double v2 = 0;   // m/s
  double vb = 0;   // m/s
  double gamma2 = 0;   // 1/m
  double gamma_b = 0;  // 1/m

  double gamma_bar() const { return 0.5 * (gamma2 + gamma_b); }
  /// ((gamma2 - gamma_b)/2)^2 - 4|g12|^2 / (v2 vb)
  double discriminant() const;
  void validate() const;
};

enum class Regime { overdamped, oscillatory, strong_coupling };
std::string to_string(Regime r);

struct RegimeReport {
  Matrix2c M{};
  Complex lambda_plus;
  Complex lambda_minus;
  double D = 0.0;
  double gamma_bar = 0.0;
  double threshold_osc = 0.0;     // |g12| where D changes sign, Hz
  double threshold_strong = 0.0;  // sqrt(v2 vb) gamma_bar / 2, Hz
  double coupling_strong = 0.0;   // |g12| where |Im l| = R |Re l|, Hz
  double ratio = 10.0;
  Regime regime = Regime::overdamped;
};

/// M = [[-gamma2/2, i g12/v2], [i g12*/vb, -gamma_b/2]].
Matrix2c build_matrix(Complex g12, double v2, double vb, double gamma2, double gamma_b);
Matrix2c build_matrix(const SwapParams& p);

struct EigenPair2 {
  Complex lambda_plus;
  Complex lambda_minus;
  Complex D;  // (m11 - m22)^2 + 4 m12 m21
};

/// Closed-form eigenvalues (tr M +- sqrt(D)) / 2; a real D selects the
/// real or purely imaginary root exactly.
EigenPair2 eigenvalues(const Matrix2c& M);

/// |g12| at which |Im lambda| / |Re lambda| reaches `ratio`.
double coupling_at_ratio(const SwapParams& p, double ratio);

/// D = 0 counts as overdamped.
RegimeReport classify(const SwapParams& p, double ratio = 10.0);

/// exp(M x) phi0 in closed form (well defined at D = 0).
Vector2c propagate(const Matrix2c& M, const Vector2c& phi0, double x);

/// One row per |g12| on a logarithmic sweep.
std::vector<RegimeReport> regime_sweep(SwapParams p, double g_min, double g_max, std::size_t points,
                                       double ratio = 10.0);

/// Illustrative parameter sets, read off the paper's scatter plots
/// (estimates, not reference data).
struct RegimePreset {
  std::string name;
  double g0;      // Hz m^1/2
  double v2;      // m/s
  double vb;      // m/s
  double kappa2;  // 1/s
  double Gamma;   // 1/s
};
const std::vector<RegimePreset>& regime_presets();

}  // namespace cwom
