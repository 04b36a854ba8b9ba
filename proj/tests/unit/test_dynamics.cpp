#include "doctest.h"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

#include "cwom/core/hamiltonian.hpp"
#include "cwom/core/spectral.hpp"
#include "cwom/dynamics/boundary.hpp"
#include "cwom/dynamics/evolve.hpp"
#include "cwom/dynamics/noise.hpp"
#include "cwom/dynamics/rng.hpp"
#include "cwom/dynamics/stepper.hpp"
#include "helpers.hpp"

using namespace cwom;
using namespace testutil;

namespace {

Model closed_model(const CouplingSet& c, std::size_t n = 128, double dx = 0.05) {
  Grid1D g(n, dx);
  return Model::single(g, DispersionSpec::polynomial({0.0, 1.0, 0.05}), DispersionSpec::polynomial({0.0, 0.2}), c);
}

FieldState smooth_state(const Model& m, unsigned seed, double amp = 1.0) {
  FieldState s = m.vacuum();
  s.a() = random_field(m.grid, 4, seed, amp);
  s.b() = random_field(m.grid, 4, seed + 1, 0.3 * amp);
  return s;
}

Model open_line(std::size_t n, double dx, double v) {
  Model m = Model::single(Grid1D(n, dx), DispersionSpec::linear(0.0, v), DispersionSpec{}, CouplingSet{});
  m.boundary.kind = BoundaryKind::open;
  return m;
}

}  // namespace

TEST_CASE("Philox4x32-10 known answers") {
  struct Kat {
    std::uint64_t seed, stream, block;
    std::uint32_t out[4];
  };
  const Kat kats[] = {
      {0, 0, 0, {0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}},
      {~0ull, ~0ull, ~0ull, {0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}},
      {0x299f31d0a4093822ull, 0x0370734413198a2eull, 0x85a308d3243f6a88ull,
       {0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}},
  };
  for (const auto& k : kats) {
    Philox4x32 r(k.seed, k.stream);
    r.seek(k.block);
    for (int i = 0; i < 4; ++i) CHECK(r() == k.out[i]);
  }
}

TEST_CASE("noise field statistics") {
  Grid1D g(64, 0.1);
  const double rate = 2.0, occ = 0.3, dt = 0.01;
  const double var = rate * (occ + 0.5) / (g.dx() * dt);
  const int n = 10000;
  Philox4x32 rng(5, 0);
  Complex mean{}, cov{};
  double second = 0.0;
  for (int i = 0; i < n; ++i) {
    const ComplexField xi = sample_noise_field(g, rate, occ, dt, rng);
    mean += xi[5];
    second += std::norm(xi[5]);
    cov += xi[5] * std::conj(xi[17]);
  }
  mean /= n;
  second /= n;
  cov /= n;
  const double sigma_mean = std::sqrt(var / n);
  CHECK(std::abs(mean.real()) < 4.0 * sigma_mean / std::sqrt(2.0));
  CHECK(std::abs(mean.imag()) < 4.0 * sigma_mean / std::sqrt(2.0));
  // increment sqrt(rate) xi dt has variance rate (occ + 1/2) dt / dx
  CHECK(std::abs(second * dt * dt - rate * (occ + 0.5) * dt / g.dx()) < 3.0 * var * dt * dt / std::sqrt(n));
  CHECK(std::abs(cov) < 3.0 * var / std::sqrt(n));
  CHECK_THROWS_AS(sample_noise_field(g, rate, -0.1, dt, rng), std::invalid_argument);
}

TEST_CASE("free evolution keeps plane waves as pure phases") {
  Model m = closed_model(CouplingSet{});
  FieldState s = m.vacuum();
  const double k = 3.0 * m.grid.dk();
  for (std::size_t i = 0; i < m.grid.size(); ++i) s.a()[i] = std::polar(1.0, k * m.grid.x(i));
  s.b() = s.a();
  const double n0 = s.photon_number(), b0 = s.phonon_number();
  Stepper st(m, 0.01);
  for (int i = 0; i < 100; ++i) {
    st.step(s);
    CHECK(std::abs(s.photon_number() - n0) < 1e-12 * n0 * (i + 1));
    CHECK(std::abs(s.phonon_number() - b0) < 1e-12 * b0 * (i + 1));
  }
  const double w = m.photons[0].dispersion(k);
  CHECK(std::abs(s.a()[3] - std::polar(1.0, k * m.grid.x(3) - w * 1.0)) < 1e-10);
}

TEST_CASE("photon number decays at kappa without noise") {
  Model m = closed_model(CouplingSet{});
  m.bath.kappa = 2.0;
  FieldState s = smooth_state(m, 3u);
  const double n0 = s.photon_number();
  EvolveConfig cfg;
  cfg.dt = 0.01;
  cfg.steps = 500;  // t = 10 / kappa
  cfg.output_every = 50;
  const auto rec = evolve(s, m, cfg, {photon_number_observable()});
  const auto& n = rec.column("photon_number_0");
  for (std::size_t i = 0; i < n.size(); ++i)
    CHECK(std::abs(n[i] / (n0 * std::exp(-m.bath.kappa * rec.times[i])) - 1.0) < 1e-6);
}

TEST_CASE("two-branch swap follows the linear two-mode solution") {
  // Pump branch 0 (uniform, strong) scatters a weak branch 1 into phonons;
  // carriers are phase matched so only the exchange terms survive.
  Grid1D g(64, 0.1);
  const double q = 40.0 * g.k_max();
  Model m;
  m.grid = g;
  const double v = 1.0, w0 = 5.0, W0 = 2.0;
  m.photons = {PhotonBranch{"pump", DispersionSpec::linear(w0, v), {0.0, w0}, std::nullopt},
               PhotonBranch{"signal", DispersionSpec::polynomial({w0 + W0 - v * q, v}), {q, w0 + W0}, std::nullopt}};
  m.phonon_dispersion = DispersionSpec::polynomial({W0 - 0.1 * q, 0.1});
  m.phonon_carrier = {q, W0};
  m.interaction.intra = {CouplingSet{}, CouplingSet{}};
  const Complex g10{0.6, 0.8};
  m.interaction.inter = {0.0, std::conj(g10), g10, 0.0};

  const Complex alpha{3.0, 0.0};
  FieldState s = m.vacuum();
  s.a(0).assign(g.size(), alpha);
  s.a(1).assign(g.size(), Complex{1e-3, 0.0});
  const Complex G = g10 * alpha;  // d a1/dt = i G b, d b/dt = i G* a1
  Eigen::Matrix2cd A;
  A << 0.0, Complex{0.0, 1.0} * G, Complex{0.0, 1.0} * std::conj(G), 0.0;
  Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(A);
  const double period = 2.0 * M_PI / std::abs(G);
  const int steps = 400;
  Stepper st(m, period / steps);
  for (int n = 0; n < steps; ++n) st.step(s);
  Eigen::Vector2cd phi0(1e-3, 0.0);
  Eigen::Vector2cd c = es.eigenvectors().colPivHouseholderQr().solve(phi0);
  Eigen::Vector2cd phi = Eigen::Vector2cd::Zero();
  for (int i = 0; i < 2; ++i) phi += c(i) * std::exp(es.eigenvalues()(i) * period) * es.eigenvectors().col(i);
  ComplexField a1(g.size(), phi(0)), b(g.size(), phi(1));
  const double err = std::sqrt(std::pow(l2_diff(s.a(1), a1), 2) + std::pow(l2_diff(s.b(), b), 2)) /
                     std::sqrt(std::pow(l2(a1), 2) + std::pow(l2(b), 2));
  CHECK(err < 1e-3);
}

TEST_CASE("closed system conserves photon and phonon numbers") {
  CouplingSet c;
  c.g_ppp = 0.8;
  c.g_mmp = 0.01;
  Model m = closed_model(c);
  FieldState s = smooth_state(m, 9u);
  const double n0 = s.photon_number();
  Stepper st(m, 0.002);
  for (int i = 0; i < 1000; ++i) st.step(s);
  CHECK(std::abs(s.photon_number() / n0 - 1.0) < 1e-8);
}

TEST_CASE("Strang splitting is second order") {
  CouplingSet c;
  c.g_ppp = 1.0;
  Model m = closed_model(c, 64, 0.1);
  const FieldState s0 = smooth_state(m, 13u, 0.7);
  const double T = 1.0;
  auto run = [&](int steps) {
    FieldState s = s0;
    Stepper st(m, T / steps);
    for (int i = 0; i < steps; ++i) st.step(s);
    return s;
  };
  const FieldState ref = run(2048);
  std::vector<double> err;
  for (int steps : {16, 32, 64}) {
    const FieldState s = run(steps);
    err.push_back(l2_diff(s.a(), ref.a()) + l2_diff(s.b(), ref.b()));
  }
  CHECK(err[0] / err[1] == doctest::Approx(4.0).epsilon(0.1));
  CHECK(err[1] / err[2] == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("evolve echoes the initial state for zero steps") {
  Model m = closed_model(CouplingSet::simple(1.0));
  const FieldState s = smooth_state(m, 17u);
  EvolveConfig cfg;
  cfg.dt = 0.01;
  const auto rec = evolve(s, m, cfg, {photon_number_observable()});
  REQUIRE(rec.times.size() == 1);
  CHECK(rec.column("photon_number_0")[0] == s.photon_number());
  CHECK(rec.final_state.a() == s.a());
}

TEST_CASE("closed even-sector Hamiltonian is conserved over 1e4 steps") {
  CouplingSet c;
  c.g_ppp = 0.5;
  c.g_mmp = 0.002;
  c.g_mpm = {0.001, 0.0005};
  Model m = closed_model(c, 64, 0.1);
  const FieldState s = smooth_state(m, 19u, 0.5);
  EvolveConfig cfg;
  cfg.dt = 2.5e-4;
  cfg.steps = 10000;
  cfg.output_every = 1000;
  const auto rec = evolve(s, m, cfg, {hamiltonian_observable(m)});
  const auto& h = rec.column("hamiltonian");
  for (double v : h) CHECK(std::abs(v / h[0] - 1.0) < 1e-8);
}

TEST_CASE("stability bound is enforced before running") {
  Model m = closed_model(CouplingSet::simple(10.0));
  const FieldState s = smooth_state(m, 23u, 5.0);
  EvolveConfig cfg;
  cfg.dt = 10.0 * stability_bound(m, s);
  cfg.steps = 1;
  CHECK_THROWS_AS(evolve(s, m, cfg), std::invalid_argument);
  cfg.enforce_stability = false;
  cfg.dt = 1e3;
  cfg.steps = 200;
  CHECK_THROWS_AS(evolve(s, m, cfg), DivergenceError);
}

TEST_CASE("replay is bit-identical and seeds decorrelate trajectories") {
  Model m = closed_model(CouplingSet::simple(0.3), 64, 0.1);
  m.bath.kappa = 0.5;
  m.bath.gamma_mech = 0.2;
  m.bath.n_th = 2.0;
  m.bath.sampling = Sampling::wigner;
  const FieldState s = smooth_state(m, 29u);
  EvolveConfig cfg;
  cfg.dt = 0.01;
  cfg.steps = 200;
  cfg.seed = 77;
  const auto a = run_ensemble(s, m, cfg, 4, {photon_number_observable()}, 3);
  const auto b = run_ensemble(s, m, cfg, 4, {photon_number_observable()}, 1);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(a[i].final_state.a() == b[i].final_state.a());
    CHECK(a[i].final_state.b() == b[i].final_state.b());
  }
  CHECK(a[0].final_state.a() != a[1].final_state.a());
  const auto mean = ensemble_mean(a);
  CHECK(mean.column("photon_number_0").back() != a[0].column("photon_number_0").back());
}

TEST_CASE("endfire cw drive launches flux |A|^2") {
  const double v = 2.0, dx = 0.05;
  Model m = open_line(256, dx, v);
  DriveSpec d;
  d.alpha_in = {0.3, -0.4};
  d.omega_L = 0.0;
  m.drives = {d};
  const OpenLayout lay = open_layout(m);
  FieldState s = m.vacuum();
  Stepper st(m, 0.7 * dx / v);
  for (int i = 0; i < 600; ++i) st.step(s);
  for (std::size_t i = lay.interior_begin; i < lay.interior_end; ++i)
    CHECK(std::abs(v * std::norm(s.a()[i]) / std::norm(d.alpha_in) - 1.0) < 1e-6);
  CHECK(d.power_W().value() == 0.0);
}

TEST_CASE("endfire requires linear dispersion at the entrance") {
  Model m = Model::single(Grid1D(128, 0.1), DispersionSpec::polynomial({0.0, 1.0, 0.5}), DispersionSpec{},
                          CouplingSet{});
  m.boundary.kind = BoundaryKind::open;
  DriveSpec d;
  d.alpha_in = 1.0;
  m.drives = {d};
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
}

TEST_CASE("vacuum entrance noise fills each cell with 1/(2 dx)") {
  const double v = 1.0, dx = 0.1;
  Model m = open_line(256, dx, v);
  m.bath.sampling = Sampling::wigner;
  const OpenLayout lay = open_layout(m);
  EvolveConfig cfg;
  cfg.dt = dx / v;
  cfg.steps = 300;
  cfg.output_every = 300;
  const auto runs = run_ensemble(m.vacuum(), m, cfg, 40);
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& r : runs)
    for (std::size_t i = lay.interior_begin; i < lay.interior_end; ++i) {
      sum += std::norm(r.final_state.a()[i]);
      ++count;
    }
  const double mean = sum / count, expected = 0.5 / dx;
  CHECK(std::abs(mean - expected) < 3.0 * expected / std::sqrt(static_cast<double>(count)));
}

TEST_CASE("absorbing layer") {
  Grid1D g(1024, 0.05);
  // bidirectional branch omega = c|k|
  RealField w(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) w[i] = std::abs(g.k(i));
  Model m = Model::single(g, DispersionSpec::tabulated(g, w), DispersionSpec{}, CouplingSet{});
  m.boundary.kind = BoundaryKind::open;
  const OpenLayout lay = open_layout(m);

  SUBCASE("zero profile is the identity") {
    AbsorberProfile p{{RealField(g.size(), 0.0)}, RealField(g.size(), 0.0)};
    FieldState s = m.vacuum();
    s.a() = random_field(g, 10, 3u);
    const FieldState r = absorbing_layer(s, p, 0.1);
    CHECK(r.a() == s.a());
  }
  SUBCASE("left-moving pulse leaves through x = 0") {
    const double k0 = -0.25 * g.k_max(), sigma = 12.0 * g.dx();
    const double x0 = g.x((lay.interior_begin + lay.interior_end) / 2);
    FieldState s = m.vacuum();
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double r = (g.x(i) - x0) / sigma;
      s.a()[i] = std::exp(-0.5 * r * r) * std::polar(1.0, k0 * g.x(i));
    }
    const double e0 = s.photon_number();
    Stepper st(m, 0.5 * g.dx());
    const double distance = x0 + 0.1 * g.length() + 10.0 * sigma;
    const int steps = static_cast<int>(distance / (0.5 * g.dx()));
    for (int i = 0; i < steps; ++i) st.step(s);
    // what is left: right-movers (reflected) plus unabsorbed left-movers
    CHECK(s.photon_number() < 1e-4 * e0);
  }
  SUBCASE("under-resolved content is flagged") {
    FieldState s = m.vacuum();
    for (std::size_t i = 0; i < g.size(); ++i) s.a()[i] = std::polar(1.0, 0.9 * g.k_max() * g.x(i));
    std::vector<std::string> warnings;
    absorbing_layer(s, make_absorber(m), 0.01, &warnings);
    CHECK(!warnings.empty());
    FieldState r = m.vacuum();
    r.a() = random_field(g, 10, 4u);
    warnings.clear();
    absorbing_layer(r, make_absorber(m), 0.01, &warnings);
    CHECK(warnings.empty());
  }
}
