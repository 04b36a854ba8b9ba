#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "cwom/core/coupling.hpp"
#include "cwom/core/dispersion.hpp"
#include "cwom/core/field.hpp"
#include "cwom/core/grid.hpp"
#include "cwom/core/hamiltonian.hpp"
#include "cwom/core/interaction.hpp"
#include "cwom/core/spectral.hpp"
#include "helpers.hpp"

using namespace cwom;
using namespace testutil;

namespace {

CouplingSet all_even() {
  CouplingSet c;
  c.g_ppp = 1.3;
  c.g_mmp = -0.7;
  c.g_mpm = {0.4, -0.9};
  return c;
}

CouplingSet all_odd() {
  CouplingSet c;
  c.sector = Sector::odd;
  c.g_ppm = 0.8;
  c.g_mpp = {-0.3, 0.6};
  c.g_mmm = 0.25;
  return c;
}

CouplingSet all_mixed() {
  CouplingSet c = all_even();
  c.g_ppm = 0.8;
  c.g_mpp = {-0.3, 0.6};
  c.g_mmm = 0.25;
  c.sector = Sector::mixed;
  c.broken_inversion = true;
  return c;
}

FieldState random_state(const Grid1D& g, unsigned seed, int m_max = 6) {
  FieldState s(g);
  s.a() = random_field(g, m_max, seed);
  s.b() = random_field(g, m_max, seed + 100, 0.5);
  return s;
}

}  // namespace

TEST_CASE("grid rejects bad sizes and spacings") {
  CHECK_THROWS_AS(Grid1D(12, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid1D(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid1D(16, 0.0), std::invalid_argument);
  Grid1D g(16, 0.5);
  CHECK(g.k(0) == 0.0);
  CHECK(g.length() == doctest::Approx(8.0));
  double kmax = 0.0;
  for (double k : g.k_axis()) kmax = std::max(kmax, std::abs(k));
  CHECK(kmax == doctest::Approx(M_PI / 0.5));
}

TEST_CASE("transform round trip") {
  for (std::size_t n = 2; n <= 4096; n *= 2) {
    Grid1D g(n, 0.1);
    std::mt19937 rng(static_cast<unsigned>(n));
    std::normal_distribution<double> d;
    ComplexField f(n);
    for (auto& v : f) v = {d(rng), d(rng)};
    const ComplexField r = ifft(fft(f));
    CHECK(max_abs_diff(f, r) < 1e-12 * max_abs(f));
  }
}

TEST_CASE("spectral derivative of simple fields") {
  Grid1D g(64, 0.25);
  ComplexField c(64, Complex{2.0, -1.0});
  CHECK(max_abs(spectral_derivative(c, g, 1)) < 1e-13);
  CHECK(max_abs(spectral_derivative(c, g, 2)) < 1e-13);

  const double k = 5.0 * g.dk();
  ComplexField w(64);
  for (std::size_t i = 0; i < 64; ++i) w[i] = std::polar(1.0, k * g.x(i));
  const ComplexField d1 = spectral_derivative(w, g, 1);
  for (std::size_t i = 0; i < 64; ++i) CHECK(std::abs(d1[i] - Complex{0.0, k} * w[i]) < 1e-12 * k);

  CHECK_THROWS_AS(spectral_derivative(w, g, 3), std::invalid_argument);
  CHECK_THROWS_AS(spectral_derivative(ComplexField(10), g, 1), std::invalid_argument);
}

TEST_CASE("spectral derivative matches an 8th-order finite-difference oracle") {
  // The oracle evaluates the band-limited function between grid points with
  // a small step, so its truncation error stays far below the tolerance.
  Grid1D g(256, 0.01);
  const int m_max = static_cast<int>(g.size() / 8) - 1;  // |k| < pi / (4 dx)
  const TrigPoly p = random_poly(g, m_max, 7u);
  const ComplexField d = spectral_derivative(p.sample(g), g, 1);
  const double h = g.dx() / 16.0;
  static const double w[4] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
  double dev = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    Complex fd{};
    for (int m = 1; m <= 4; ++m) fd += w[m - 1] * (p(g.x(i) + m * h) - p(g.x(i) - m * h));
    fd /= h;
    dev = std::max(dev, std::abs(d[i] - fd));
    scale = std::max(scale, std::abs(fd));
  }
  CHECK(dev < 1e-8 * scale);
}

TEST_CASE("shifted derivative of an envelope equals the lab derivative") {
  Grid1D g(128, 0.05);
  const double kc = 9.0 * g.dk();
  const ComplexField env = random_field(g, 5, 3u);
  ComplexField lab(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) lab[i] = env[i] * std::polar(1.0, kc * g.x(i));
  const ComplexField d_lab = spectral_derivative(lab, g, 1);
  const ComplexField d_env = spectral_derivative(env, g, 1, kc);
  double dev = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    dev = std::max(dev, std::abs(d_lab[i] - d_env[i] * std::polar(1.0, kc * g.x(i))));
  CHECK(dev < 1e-10 * max_abs(d_lab));
}

TEST_CASE("apply_dispersion: identity, plane-wave phase, norm") {
  Grid1D g(128, 0.1);
  const ComplexField f = random_field(g, 20, 11u);
  CHECK(max_abs_diff(apply_dispersion(f, DispersionSpec{}, 0.3, g), f) < 1e-13);
  CHECK_THROWS_AS(apply_dispersion(f, DispersionSpec{}, -1.0, g), std::invalid_argument);

  const auto disp = DispersionSpec::polynomial({2.0, 0.5, 0.03});
  const double k0 = 7.0 * g.dk(), dt = 0.37;
  ComplexField w(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) w[i] = std::polar(1.0, k0 * g.x(i));
  const ComplexField r = apply_dispersion(w, disp, dt, g);
  const Complex phase = std::polar(1.0, -disp(k0) * dt);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(r[i] - phase * w[i]) < 1e-12);

  const ComplexField q = apply_dispersion(f, disp, dt, g);
  CHECK(std::abs(norm2(q, g) - norm2(f, g)) < 1e-13 * norm2(f, g));
}

TEST_CASE("apply_dispersion translates a Gaussian under linear dispersion") {
  Grid1D g(512, 0.02);
  const double v = 3.0, dt = 0.004, x0 = 3.0, sigma = 0.3;
  ComplexField f(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double r = (g.x(i) - x0) / sigma;
    f[i] = std::exp(-0.5 * r * r);
  }
  auto centroid = [&](const ComplexField& h) {
    double s = 0.0, w = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
      s += g.x(i) * std::norm(h[i]);
      w += std::norm(h[i]);
    }
    return s / w;
  };
  const auto disp = DispersionSpec::linear(0.0, v);
  ComplexField h = f;
  double c_prev = centroid(h);
  for (int n = 0; n < 50; ++n) {
    h = apply_dispersion(h, disp, dt, g);
    const double c = centroid(h);
    CHECK(std::abs((c - c_prev) - v * dt) < 1e-6 * g.dx());
    c_prev = c;
  }
}

TEST_CASE("dispersion shift re-expands the polynomial about the carrier") {
  const auto d = DispersionSpec::polynomial({1.0, 2.0, -0.5, 0.1});
  const auto s = d.shifted(0.7, 3.0);
  for (double k : {-1.0, 0.0, 0.4, 2.0}) CHECK(s(k) == doctest::Approx(d(k + 0.7) - 3.0).epsilon(1e-12));
  CHECK(d.group_velocity_at(0.7) == doctest::Approx(2.0 - 0.7 + 0.3 * 0.49));
}

TEST_CASE("coupling sector bookkeeping") {
  CouplingSet c = all_even();
  c.g_ppm = 0.1;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  CouplingSet m = all_mixed();
  m.broken_inversion = false;
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
  Grid1D g(32, 0.1);
  FieldState s = random_state(g, 1u);
  CHECK_THROWS_AS(interaction_rhs(s, m), std::invalid_argument);
  CHECK_NOTHROW(interaction_rhs(s, all_mixed()));
}

TEST_CASE("interaction_rhs examples") {
  Grid1D g(64, 0.1);
  const double u0 = 0.8;
  FieldState s(g);
  s.a() = random_field(g, 6, 5u);
  s.b().assign(g.size(), Complex{0.5 * u0, 0.0});

  SUBCASE("g_ppp with constant displacement") {
    const auto d = interaction_rhs(s, CouplingSet::simple(2.5));
    for (std::size_t i = 0; i < g.size(); ++i)
      CHECK(std::abs(d.da[0][i] - Complex{0.0, 2.5 * u0} * s.a()[i]) < 1e-12);
  }
  SUBCASE("g_mmp on a plane wave") {
    CouplingSet c;
    c.g_mmp = 0.3;
    const double k = 6.0 * g.dk();
    for (std::size_t i = 0; i < g.size(); ++i) s.a()[i] = std::polar(1.0, k * g.x(i));
    const auto d = interaction_rhs(s, c);
    for (std::size_t i = 0; i < g.size(); ++i)
      CHECK(std::abs(d.da[0][i] - Complex{0.0, 0.3 * k * k * u0} * s.a()[i]) < 1e-10 * k * k);
  }
  SUBCASE("zero couplings") {
    const auto d = interaction_rhs(s, CouplingSet{});
    CHECK(max_abs(d.da[0]) == 0.0);
    CHECK(max_abs(d.db) == 0.0);
  }
}

TEST_CASE("every coupling term conserves the photon number") {
  Grid1D g(128, 0.05);
  for (const auto& c : {all_even(), all_odd(), all_mixed()}) {
    const FieldState s = random_state(g, 21u);
    const auto d = interaction_rhs(s, c);
    double flow = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      flow += (std::conj(s.a()[i]) * d.da[0][i]).real() * g.dx();
      scale += std::abs(s.a()[i]) * std::abs(d.da[0][i]) * g.dx();
    }
    CHECK(std::abs(flow) < 1e-12 * scale);
  }
}

TEST_CASE("both equations derive from one interaction Hamiltonian") {
  // da/dt = i dI/da*, db/dt = i dI/db* with I = int h dx; checked by central
  // differences of the evaluated integral along random directions.
  Grid1D g(64, 0.1);
  for (const auto& c : {all_even(), all_odd(), all_mixed()}) {
    const InteractionModel m = InteractionModel::single(c);
    const FieldState s = random_state(g, 31u, 5);
    const auto d = interaction_rhs(s, m);
    const ComplexField da_dir = random_field(g, 5, 41u);
    const ComplexField db_dir = random_field(g, 5, 42u);
    const double eps = 1e-5;
    auto shifted = [&](double e) {
      FieldState t = s;
      for (std::size_t i = 0; i < g.size(); ++i) {
        t.a()[i] += e * da_dir[i];
        t.b()[i] += e * db_dir[i];
      }
      return interaction_integral(t, m);
    };
    const double numeric = (shifted(eps) - shifted(-eps)) / (2.0 * eps);
    double predicted = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      predicted += 2.0 * (std::conj(da_dir[i]) * Complex{0.0, -1.0} * d.da[0][i]).real() * g.dx();
      predicted += 2.0 * (std::conj(db_dir[i]) * Complex{0.0, -1.0} * d.db[i]).real() * g.dx();
    }
    CHECK(numeric == doctest::Approx(predicted).epsilon(1e-7));
  }
}

TEST_CASE("integration by parts identities on the grid") {
  Grid1D g(128, 0.05);
  const ComplexField a = random_field(g, 8, 51u);
  const ComplexField u = random_field(g, 8, 52u, 1.0, true);
  const ComplexField da = spectral_derivative(a, g, 1);
  const ComplexField d2a = spectral_derivative(a, g, 2);
  const ComplexField du = spectral_derivative(u, g, 1);
  const ComplexField d2u = spectral_derivative(u, g, 2);
  Complex lhs_paper{}, rhs_paper{}, lhs_u{}, rhs_u{};
  double scale = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Complex ac = std::conj(a[i]), dac = std::conj(da[i]), d2ac = std::conj(d2a[i]);
    // {(d2 a*) a + a* d2 a} u = -2 (da*)(da) u - [(da*) a + a* da] du
    lhs_paper += (d2ac * a[i] + ac * d2a[i]) * u[i];
    rhs_paper += -2.0 * dac * da[i] * u[i] - (dac * a[i] + ac * da[i]) * du[i];
    // a* a d2u = -[(da*) a + a* da] du
    lhs_u += ac * a[i] * d2u[i];
    rhs_u += -(dac * a[i] + ac * da[i]) * du[i];
    scale += std::abs(ac * a[i] * d2u[i]) + std::abs(dac * da[i] * u[i]);
  }
  CHECK(std::abs(lhs_paper - rhs_paper) < 1e-10 * scale);
  CHECK(std::abs(lhs_u - rhs_u) < 1e-10 * scale);
}

TEST_CASE("parity under reversal") {
  Grid1D g(64, 0.1);
  const FieldState s = random_state(g, 61u);
  FieldState r = s;
  r.a() = reversed(s.a());
  r.b() = reversed(s.b());
  SUBCASE("even sector commutes") {
    const auto d = interaction_rhs(s, all_even());
    const auto dr = interaction_rhs(r, all_even());
    CHECK(max_abs_diff(dr.da[0], reversed(d.da[0])) < 1e-11 * max_abs(d.da[0]));
    CHECK(max_abs_diff(dr.db, reversed(d.db)) < 1e-11 * max_abs(d.db));
  }
  SUBCASE("odd sector anti-commutes") {
    const auto d = interaction_rhs(s, all_odd());
    const auto dr = interaction_rhs(r, all_odd());
    ComplexField na = reversed(d.da[0]), nb = reversed(d.db);
    for (auto& v : na) v = -v;
    for (auto& v : nb) v = -v;
    CHECK(max_abs_diff(dr.da[0], na) < 1e-11 * max_abs(d.da[0]));
    CHECK(max_abs_diff(dr.db, nb) < 1e-11 * max_abs(d.db));
  }
}

TEST_CASE("rotating-frame envelopes reproduce the lab-frame dynamics") {
  // Lab fields built from carrier-tagged envelopes: the envelope rhs times
  // the carrier must equal the lab rhs wherever every term is kept.
  Grid1D g(128, 0.05);
  const double kc = 4.0 * g.dk(), wc = 3.0, qc = 2.0 * g.dk(), Wc = 0.7;
  FieldState env(g);
  env.a() = random_field(g, 3, 71u);
  env.b() = random_field(g, 3, 72u, 0.4);
  env.photon_carriers[0] = {kc, wc};
  env.phonon_carrier = {qc, Wc};
  env.time = 0.9;
  InteractionModel m = InteractionModel::single(all_even());
  m.band_fraction = 1.0;
  FieldState lab(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    lab.a()[i] = env.a()[i] * std::polar(1.0, kc * g.x(i) - wc * env.time);
    lab.b()[i] = env.b()[i] * std::polar(1.0, qc * g.x(i) - Wc * env.time);
  }
  lab.time = env.time;
  const auto de = interaction_rhs(env, m);
  const auto dl = interaction_rhs(lab, m);
  double dev = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    dev = std::max(dev, std::abs(dl.da[0][i] - de.da[0][i] * std::polar(1.0, kc * g.x(i) - wc * env.time)));
  CHECK(dev < 1e-10 * max_abs(dl.da[0]));
}

TEST_CASE("free energy of a plane wave") {
  Grid1D g(32, 0.2);
  const auto disp = DispersionSpec::polynomial({1.0, 0.0, 2.0});
  const double k = 3.0 * g.dk();
  ComplexField w(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) w[i] = std::polar(0.5, k * g.x(i));
  CHECK(free_energy(w, disp, g) == doctest::Approx(disp(k) * 0.25 * g.length()));
}
