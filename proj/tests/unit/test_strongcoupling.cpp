#include "doctest.h"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <algorithm>
#include <cmath>
#include <random>

#include "cwom/strongcoupling/regime.hpp"

using namespace cwom;

namespace {

Eigen::Matrix2cd to_eigen(const Matrix2c& M) {
  Eigen::Matrix2cd E;
  E << M[0][0], M[0][1], M[1][0], M[1][1];
  return E;
}

SwapParams base(double g) {
  SwapParams p;
  p.g12 = std::polar(g, 0.3);
  p.v2 = 2e8;
  p.vb = 5e3;
  p.gamma2 = 0.02;
  p.gamma_b = 2.0 * kPi * 1e7 / 5e3;
  return p;
}

}  // namespace

TEST_CASE("matrix entries") {
  const Matrix2c M = build_matrix({1.0, 2.0}, 4.0, 5.0, 0.6, 0.8);
  CHECK(std::abs(M[0][0] - Complex(-0.3, 0)) < 1e-15);
  CHECK(std::abs(M[1][1] - Complex(-0.4, 0)) < 1e-15);
  CHECK(std::abs(M[0][1] - Complex(0, 1) * Complex(1, 2) / 4.0) < 1e-15);
  CHECK(std::abs(M[1][0] - Complex(0, 1) * Complex(1, -2) / 5.0) < 1e-15);
  CHECK_THROWS(build_matrix({1, 0}, 0.0, 1.0, 0, 0));
}

TEST_CASE("closed-form eigenvalues match a general eigensolver") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-3.0, 3.0);
  for (int t = 0; t < 500; ++t) {
    const double v2 = std::pow(10.0, U(rng) + 5), vb = std::pow(10.0, U(rng) + 3);
    const double g2 = std::pow(10.0, U(rng)), gb = std::pow(10.0, U(rng));
    const Complex g = std::polar(std::pow(10.0, U(rng) + 4), U(rng));
    const Matrix2c M = build_matrix(g, v2, vb, g2, gb);
    const EigenPair2 e = eigenvalues(M);
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(to_eigen(M));
    auto ev = es.eigenvalues();
    const double scale = std::max({std::abs(ev[0]), std::abs(ev[1]), 1e-300});
    const double d1 = std::abs(ev[0] - e.lambda_plus) + std::abs(ev[1] - e.lambda_minus);
    const double d2 = std::abs(ev[1] - e.lambda_plus) + std::abs(ev[0] - e.lambda_minus);
    CHECK(std::min(d1, d2) <= 1e-9 * scale);
  }
}

TEST_CASE("dense sweep: regime labels agree with the eigenvalues") {
  const SwapParams p0 = base(1.0);
  const auto rows = regime_sweep(p0, 1e-2, 1e13, 10000);
  REQUIRE(rows.size() == 10000);
  int osc = 0, strong = 0, over = 0;
  for (const auto& r : rows) {
    const EigenPair2 e = eigenvalues(r.M);
    CHECK(std::abs(e.lambda_plus - r.lambda_plus) <= 1e-9 * std::abs(r.lambda_plus));
    const double im = std::abs(r.lambda_plus.imag()), re = std::abs(r.lambda_plus.real());
    switch (r.regime) {
      case Regime::overdamped: ++over; CHECK(r.D >= 0.0); CHECK(im == 0.0); break;
      case Regime::oscillatory: ++osc; CHECK(r.D < 0.0); CHECK(im < 10.0 * re); break;
      case Regime::strong_coupling: ++strong; CHECK(im >= 10.0 * re); break;
    }
  }
  CHECK(over > 0);
  CHECK(osc > 0);
  CHECK(strong > 0);
}

TEST_CASE("thresholds are where the labels change") {
  const SwapParams p0 = base(1.0);
  const RegimeReport r0 = classify(p0);
  const double gosc = r0.threshold_osc, gs = r0.coupling_strong;
  CHECK(gs > gosc);
  CHECK(gs > r0.threshold_strong);
  CHECK(classify(base(gosc * (1 - 1e-9))).regime == Regime::overdamped);
  CHECK(classify(base(gosc * (1 + 1e-6))).regime == Regime::oscillatory);
  CHECK(classify(base(gs * (1 - 1e-9))).regime == Regime::oscillatory);
  CHECK(classify(base(gs * (1 + 1e-9))).regime == Regime::strong_coupling);
  // D = 0 exactly counts as overdamped
  SwapParams e = base(0.0);
  e.gamma2 = 2.0;
  e.gamma_b = 1.0;
  e.v2 = 4.0;
  e.vb = 4.0;
  e.g12 = 1.0;  // sqrt(v2 vb)|dg|/4
  CHECK(e.discriminant() == 0.0);
  CHECK(classify(e).regime == Regime::overdamped);
}

TEST_CASE("equal decay rates: any coupling oscillates") {
  SwapParams p = base(1e-6);
  p.gamma2 = p.gamma_b = 1.5;
  const RegimeReport r = classify(p);
  CHECK(r.threshold_osc == 0.0);
  CHECK(r.regime == Regime::oscillatory);
  CHECK(std::abs(r.coupling_strong - 10.0 * r.threshold_strong) < 1e-12 * r.coupling_strong);
}

TEST_CASE("decay rate raises the coupling needed for strong coupling") {
  double last = 0.0;
  for (double gb : {10.0, 100.0, 1000.0, 1e4}) {
    SwapParams p = base(1.0);
    p.gamma_b = gb;
    const double g = classify(p).coupling_strong;
    CHECK(g > last);
    last = g;
  }
}

TEST_CASE("propagate matches a dense matrix exponential") {
  for (double g : {1e-3, 1.0, 1e3, 1e5, 1e7}) {
    const SwapParams p = base(g);
    const Matrix2c M = build_matrix(p);
    const Vector2c phi{Complex{1.0, 0.0}, Complex{0.2, -0.1}};
    for (double x : {0.0, 1e-4, 1e-2, 0.3}) {
      const Vector2c out = propagate(M, phi, x);
      Eigen::Matrix2cd E = Eigen::Matrix2cd(to_eigen(M) * x).exp();
      Eigen::Vector2cd ref = E * Eigen::Vector2cd(phi[0], phi[1]);
      const double s = ref.norm() + 1e-300;
      CHECK(std::abs(out[0] - ref[0]) <= 1e-10 * s);
      CHECK(std::abs(out[1] - ref[1]) <= 1e-10 * s);
    }
  }
  // defective matrix at D = 0
  const Matrix2c M = build_matrix(Complex{1.0, 0.0}, 4.0, 4.0, 2.0, 1.0);
  const Vector2c out = propagate(M, {Complex{1.0, 0.0}, Complex{0.0, 0.0}}, 0.7);
  Eigen::Vector2cd ref = Eigen::Matrix2cd(to_eigen(M) * 0.7).exp() * Eigen::Vector2cd(1.0, 0.0);
  CHECK(std::abs(out[0] - ref[0]) < 1e-12);
  CHECK(std::abs(out[1] - ref[1]) < 1e-12);
}

TEST_CASE("presets classify") {
  for (const auto& pr : regime_presets()) {
    SwapParams p;
    p.v2 = pr.v2;
    p.vb = pr.vb;
    p.g12 = pr.g0;
    p.gamma2 = pr.kappa2 / pr.v2;
    p.gamma_b = pr.Gamma / pr.vb;
    CHECK_NOTHROW(classify(p));
  }
}
