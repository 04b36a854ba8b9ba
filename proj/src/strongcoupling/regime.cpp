#include "cwom/strongcoupling/regime.hpp"

#include <cmath>
#include <stdexcept>

namespace cwom {
namespace {

constexpr Complex kI{0.0, 1.0};

Complex principal_sqrt(Complex D) {
  // Real D (the physical case) must give an exactly real or imaginary root.
  if (std::abs(D.imag()) <= 1e-14 * std::abs(D.real())) {
    const double d = D.real();
    return d >= 0.0 ? Complex{std::sqrt(d), 0.0} : Complex{0.0, std::sqrt(-d)};
  }
  return std::sqrt(D);
}

}  // namespace

double SwapParams::discriminant() const {
  const double h = 0.5 * (gamma2 - gamma_b);
  return h * h - 4.0 * std::norm(g12) / (v2 * vb);
}

void SwapParams::validate() const {
  if (!(v2 > 0.0) || !(vb > 0.0)) throw std::invalid_argument("SwapParams: velocities must be positive");
  if (!(gamma2 >= 0.0) || !(gamma_b >= 0.0)) throw std::invalid_argument("SwapParams: decay rates must be >= 0");
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::overdamped: return "overdamped";
    case Regime::oscillatory: return "oscillatory";
    case Regime::strong_coupling: return "strong_coupling";
  }
  return "?";
}

Matrix2c build_matrix(Complex g12, double v2, double vb, double gamma2, double gamma_b) {
  if (!(v2 > 0.0) || !(vb > 0.0)) throw std::invalid_argument("build_matrix: velocities must be positive");
  Matrix2c M;
  M[0] = {Complex{-0.5 * gamma2, 0.0}, kI * g12 / v2};
  M[1] = {kI * std::conj(g12) / vb, Complex{-0.5 * gamma_b, 0.0}};
  return M;
}

Matrix2c build_matrix(const SwapParams& p) { return build_matrix(p.g12, p.v2, p.vb, p.gamma2, p.gamma_b); }

EigenPair2 eigenvalues(const Matrix2c& M) {
  const Complex tr = M[0][0] + M[1][1];
  const Complex diff = M[0][0] - M[1][1];
  // i g / v2 * i g* / vb is real: form it from magnitudes to keep D real
  Complex off = M[0][1] * M[1][0];
  if (std::abs(off.imag()) <= 1e-15 * std::abs(off)) off = Complex{off.real(), 0.0};
  EigenPair2 e;
  e.D = diff * diff + 4.0 * off;
  const Complex s = principal_sqrt(e.D);
  e.lambda_plus = 0.5 * (tr + s);
  e.lambda_minus = 0.5 * (tr - s);
  return e;
}

double coupling_at_ratio(const SwapParams& p, double ratio) {
  const double h = 0.5 * (p.gamma2 - p.gamma_b);
  const double gb = p.gamma_bar();
  return 0.5 * std::sqrt(p.v2 * p.vb) * std::sqrt(ratio * ratio * gb * gb + h * h);
}

RegimeReport classify(const SwapParams& p, double ratio) {
  p.validate();
  if (!(ratio > 0.0)) throw std::invalid_argument("classify: ratio must be positive");
  RegimeReport r;
  r.M = build_matrix(p);
  r.gamma_bar = p.gamma_bar();
  r.D = p.discriminant();
  const double s = r.D >= 0.0 ? std::sqrt(r.D) : 0.0;
  const double w = r.D < 0.0 ? std::sqrt(-r.D) : 0.0;
  r.lambda_plus = {0.5 * (-r.gamma_bar + s), 0.5 * w};
  r.lambda_minus = {0.5 * (-r.gamma_bar - s), -0.5 * w};
  r.threshold_osc = std::sqrt(p.v2 * p.vb) * std::abs(p.gamma2 - p.gamma_b) / 4.0;
  r.threshold_strong = std::sqrt(p.v2 * p.vb) * r.gamma_bar / 2.0;
  r.coupling_strong = coupling_at_ratio(p, ratio);
  r.ratio = ratio;
  if (r.D < 0.0) {
    const double re = std::abs(r.lambda_plus.real());
    r.regime = std::abs(r.lambda_plus.imag()) >= ratio * re ? Regime::strong_coupling : Regime::oscillatory;
  }
  return r;
}

Vector2c propagate(const Matrix2c& M, const Vector2c& phi0, double x) {
  const Complex half_tr = 0.5 * (M[0][0] + M[1][1]);
  const EigenPair2 e = eigenvalues(M);
  const Complex s = 0.5 * principal_sqrt(e.D);
  const Complex sx = s * x;
  const Complex Mphi0 = M[0][0] * phi0[0] + M[0][1] * phi0[1];
  const Complex Mphi1 = M[1][0] * phi0[0] + M[1][1] * phi0[1];
  if (std::abs(sx) > 1.0) {
    // Sylvester: sum over eigenvalues of e^{l x} (M - l' I) / (l - l')
    const Complex lp = e.lambda_plus, lm = e.lambda_minus;
    const Complex ep = std::exp(lp * x) / (lp - lm), em = std::exp(lm * x) / (lm - lp);
    return {ep * (Mphi0 - lm * phi0[0]) + em * (Mphi0 - lp * phi0[0]),
            ep * (Mphi1 - lm * phi0[1]) + em * (Mphi1 - lp * phi0[1])};
  }
  // e^{tr x/2} [cosh(s x) I + sinh(s x)/s (M - tr/2 I)]; regular at D = 0
  const Complex c = std::cosh(sx);
  const Complex sh = std::abs(sx) < 1e-4 ? x * (1.0 + sx * sx / 6.0) : std::sinh(sx) / s;
  const Complex pre = std::exp(half_tr * x);
  return {pre * (c * phi0[0] + sh * (Mphi0 - half_tr * phi0[0])),
          pre * (c * phi0[1] + sh * (Mphi1 - half_tr * phi0[1]))};
}

std::vector<RegimeReport> regime_sweep(SwapParams p, double g_min, double g_max, std::size_t points,
                                       double ratio) {
  if (!(g_min > 0.0) || !(g_max > g_min) || points < 2)
    throw std::invalid_argument("regime_sweep: need 0 < g_min < g_max and at least two points");
  std::vector<RegimeReport> out;
  out.reserve(points);
  const double phase = std::arg(p.g12);
  for (std::size_t i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(points - 1);
    const double g = g_min * std::pow(g_max / g_min, t);
    p.g12 = std::polar(g, phase);
    out.push_back(classify(p, ratio));
  }
  return out;
}

const std::vector<RegimePreset>& regime_presets() {
  static const std::vector<RegimePreset> presets = {
      {"a: chalcogenide ridge waveguide", 1.0e3, 1.2e8, 2.6e3, 2.0 * kPi * 1.0e7, 2.0 * kPi * 3.0e7},
      {"b: silicon photonic nanowire", 5.0e3, 7.0e7, 8.4e3, 2.0 * kPi * 1.0e8, 2.0 * kPi * 1.5e7},
      {"c: photonic crystal fibre", 1.0e3, 2.0e8, 6.0e3, 2.0 * kPi * 1.0e4, 2.0 * kPi * 1.0e7},
      {"d: single-mode fibre", 2.0e2, 2.0e8, 5.9e3, 2.0 * kPi * 1.0e3, 2.0 * kPi * 3.0e6},
  };
  return presets;
}

}  // namespace cwom
