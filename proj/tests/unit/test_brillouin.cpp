#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "cwom/brillouin/brillouin.hpp"

using namespace cwom;

namespace {

constexpr double kV = 7e7;
constexpr double kGamma = 2.0 * kPi * 1e6;
constexpr double kOmega1 = 2.0 * kPi * 193.5e12;
constexpr double kOmega0 = 2.0 * kPi * 1e9;

BrillouinParams params(double P1, double kappa2 = 0.0) {
  return BrillouinParams::from_pump(1e3, P1, kV, kV, 100.0, kGamma, kappa2, kOmega1, kOmega0);
}

}  // namespace

TEST_CASE("gain coefficient") {
  const double G = brillouin_gain(1e3, kV, kV, kGamma, kOmega1);
  CHECK(brillouin_gain(2e3, kV, kV, kGamma, kOmega1) == doctest::Approx(4.0 * G).epsilon(1e-15));
  CHECK(G == doctest::Approx(4e6 / (kV * kV * kGamma * kHbar * kOmega1)).epsilon(1e-15));
  for (double g : {1e2, 1e3, 3.7e3, 1e4})
    CHECK(std::abs(g0_from_gain(brillouin_gain(g, kV, 5e7, kGamma, kOmega1), kV, 5e7, kGamma, kOmega1) - g) <= 1e-12 * g);
  CHECK_THROWS_AS(brillouin_gain(1e3, kV, kV, 0.0, kOmega1), std::invalid_argument);
}

TEST_CASE("pump conversion") {
  const BrillouinParams p = params(0.05);
  CHECK(p.pump_power() == doctest::Approx(0.05).epsilon(1e-14));
  CHECK(p.omega2 == kOmega1 - kOmega0);
  CHECK(p.gamma_b() == doctest::Approx(kGamma / 100.0));
  CHECK_THROWS(BrillouinParams::from_pump(1e3, 1e-3, -1.0, kV, 100.0, kGamma, 0.0, kOmega1, kOmega0));
}

TEST_CASE("susceptibility is a Lorentzian tied to the gain") {
  const BrillouinParams p = params(1e-3);
  const Complex on = nonlinear_susceptibility(p.Omega0, p);
  CHECK(on.real() == 0.0);
  CHECK(-on.imag() == doctest::Approx(2.0 * p.g0_12 * p.g0_12 / (p.v2 * p.Gamma)).epsilon(1e-15));
  const double G = brillouin_gain(p.g0_12, p.v1, p.v2, p.Gamma, p.omega1);
  CHECK(gain_from_susceptibility(p.Omega0, p) == doctest::Approx(G).epsilon(1e-15));
  // identity over 1000 detunings, and parity about Omega0
  for (int i = 0; i < 1000; ++i) {
    const double d = (i - 500) * 0.02 * p.Gamma;
    const double a = gain_from_susceptibility(p.Omega0 + d, p), b = gain_spectrum(p.Omega0 + d, p);
    CHECK(std::abs(a - b) <= 4e-16 * std::abs(b) * 8);
    const Complex up = nonlinear_susceptibility(p.Omega0 + d, p), dn = nonlinear_susceptibility(p.Omega0 - d, p);
    CHECK(up.real() == -dn.real());
    CHECK(up.imag() == dn.imag());
  }
  // half maximum of -Im gamma3 by bisection on each side
  const double half = -0.5 * on.imag();
  auto edge = [&](double sign) {
    double lo = 0.0, hi = 10.0 * p.Gamma;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (-nonlinear_susceptibility(p.Omega0 + sign * mid, p).imag() > half ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  CHECK(std::abs(edge(1.0) + edge(-1.0) - p.Gamma) <= 1e-3 * p.Gamma);
}

TEST_CASE("adiabatic elimination") {
  BrillouinParams p = params(1e-3, 1.0 * kV);  // gamma2 = 1 /m
  const AdiabaticResult r = adiabatic_eliminate(p);
  const double G = brillouin_gain(p.g0_12, p.v1, p.v2, p.Gamma, p.omega1);
  CHECK(r.power_slope == doctest::Approx(G * 1e-3 - 1.0).epsilon(1e-12));
  CHECK(r.phase_rate == 0.0);
  CHECK(r.warnings.empty());
  // the literature form differs by 2 v1/v2
  CHECK(2.0 * printed_gain_coefficient(p) == doctest::Approx(r.amplitude_gain).epsilon(1e-14));

  BrillouinParams off = p;
  off.g12 = 0.0;
  CHECK(adiabatic_eliminate(off).net_amplitude_rate == doctest::Approx(-0.5));

  BrillouinParams warn = p;
  warn.kappa2 = p.gamma_b() / 50.0 * kV;
  CHECK(adiabatic_eliminate(warn).warnings.size() == 1);
  BrillouinParams bad = p;
  bad.kappa2 = p.gamma_b() / 5.0 * kV;
  CHECK_THROWS_AS(adiabatic_eliminate(bad), std::invalid_argument);

  // local phonon response: b = T conj(a2)
  const ComplexField a2 = {Complex{1.0, 2.0}, Complex{-0.5, 0.1}};
  const AdiabaticResult f = adiabatic_eliminate(a2, p);
  for (std::size_t i = 0; i < a2.size(); ++i)
    CHECK(std::abs(f.phonon[i] - Complex{0.0, 1.0} * p.g12 / (0.5 * p.Gamma) * std::conj(a2[i])) < 1e-12 * std::abs(f.phonon[i]));
}

TEST_CASE("full solver reproduces the small-signal slope") {
  for (bool back : {false, true}) {
    const BrillouinParams p0 = params(1e-3);
    const double G = brillouin_gain(p0.g0_12, p0.v1, p0.v2, p0.Gamma, p0.omega1);
    const BrillouinParams p = params(1e-3, 0.1 * G * 1e-3 * kV);
    GainRunConfig cfg;
    cfg.n_points = 128;
    cfg.counter_propagating = back;
    const GainRunResult r = simulate_gain(p, cfg);
    INFO("measured " << r.measured_slope << " predicted " << r.predicted_slope);
    CHECK(r.relative_error < 0.05);
    CHECK(r.fit_gain_lengths >= 3.0);
    CHECK(r.pump_depletion < 0.01);
    CHECK(r.pump_depletion > 0.0);
  }
}

TEST_CASE("stored phonon power matches the local elimination") {
  const BrillouinParams p = params(1e-3);
  GainRunConfig cfg;
  cfg.n_points = 128;
  const GainRunResult r = simulate_gain(p, cfg);
  const AdiabaticResult ad = adiabatic_eliminate(p);
  for (std::size_t i = r.x.size() / 4; i < r.x.size(); ++i) {
    const double a2sq = r.P2[i] / (kHbar * p.omega2 * p.v2);
    const double Pb = kHbar * p.Omega * p.vb * std::norm(ad.phonon_transfer) * a2sq;
    CHECK(std::abs(Pb - r.Pb[i]) <= 0.01 * r.Pb[i]);
  }
}

TEST_CASE("Manley-Rowe balance without optical loss") {
  // a larger seed so that the pump depletion stands well above the
  // entrance flux accuracy of the grid
  const BrillouinParams p = params(1e-3);
  GainRunConfig cfg;
  cfg.n_points = 128;
  cfg.seed_fraction = 2e-4;
  const GainRunResult r = simulate_gain(p, cfg);
  const std::size_t n = r.x.size();
  const double lost = (r.P1.front() - r.P1.back()) / (kHbar * p.omega1);
  const double gained = (r.P2.back() - r.P2.front()) / (kHbar * p.omega2);
  double decayed = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i)
    decayed += 0.5 * p.Gamma * (r.Pb[i] + r.Pb[i + 1]) / (kHbar * p.Omega * p.vb) * (r.x[i + 1] - r.x[i]);
  const double emitted = decayed + (r.Pb.back() - r.Pb.front()) / (kHbar * p.Omega);
  INFO("lost " << lost << " gained " << gained << " emitted " << emitted << " depletion " << r.pump_depletion);
  CHECK(std::abs(lost - gained) <= 0.01 * gained);
  CHECK(std::abs(emitted - gained) <= 0.01 * gained);
}
