#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "cwom/core/grid.hpp"

namespace testutil {

using cwom::Complex;
using cwom::ComplexField;

/// Random trigonometric polynomial with modes |m| <= m_max, stored as
/// explicit coefficients so it can be evaluated anywhere without FFTs.
struct TrigPoly {
  double length = 1.0;
  std::vector<int> modes;
  std::vector<Complex> coeffs;

  Complex operator()(double x) const {
    Complex s{};
    for (std::size_t i = 0; i < modes.size(); ++i)
      s += coeffs[i] * std::polar(1.0, 2.0 * M_PI * modes[i] * x / length);
    return s;
  }
  Complex derivative(double x) const {
    Complex s{};
    for (std::size_t i = 0; i < modes.size(); ++i) {
      const double k = 2.0 * M_PI * modes[i] / length;
      s += Complex{0.0, k} * coeffs[i] * std::polar(1.0, k * x);
    }
    return s;
  }
  ComplexField sample(const cwom::Grid1D& g) const {
    ComplexField f(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) f[i] = (*this)(g.x(i));
    return f;
  }
};

inline TrigPoly random_poly(const cwom::Grid1D& g, int m_max, unsigned seed, bool real = false) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  TrigPoly p;
  p.length = g.length();
  for (int m = -m_max; m <= m_max; ++m) {
    p.modes.push_back(m);
    p.coeffs.push_back({n(rng), n(rng)});
  }
  if (real) {
    for (std::size_t i = 0; i < p.modes.size(); ++i) {
      const std::size_t j = p.modes.size() - 1 - i;
      if (j < i) break;
      const Complex c = 0.5 * (p.coeffs[i] + std::conj(p.coeffs[j]));
      p.coeffs[i] = c;
      p.coeffs[j] = std::conj(c);
    }
  }
  return p;
}

inline ComplexField random_field(const cwom::Grid1D& g, int m_max, unsigned seed, double scale = 1.0,
                                 bool real = false) {
  ComplexField f = random_poly(g, m_max, seed, real).sample(g);
  for (auto& v : f) v *= scale;
  return f;
}

inline double max_abs(const ComplexField& f) {
  double m = 0.0;
  for (const auto& v : f) m = std::max(m, std::abs(v));
  return m;
}

inline double max_abs_diff(const ComplexField& a, const ComplexField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double l2(const ComplexField& f) {
  double s = 0.0;
  for (const auto& v : f) s += std::norm(v);
  return std::sqrt(s);
}

inline double l2_diff(const ComplexField& a, const ComplexField& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

/// Least-squares slope of y against x.
inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace testutil
