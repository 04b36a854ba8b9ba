#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "cwom/core/interaction.hpp"
#include "cwom/core/spectral.hpp"
#include "cwom/scatter/comb.hpp"
#include "cwom/scatter/vertex.hpp"

using namespace cwom;

namespace {

CouplingSet only(int which, double mag) {
  CouplingSet c;
  switch (which) {
    case 0: c.g_ppp = mag; break;
    case 1: c.g_mmp = mag; break;
    case 2: c.g_mpm = Complex{mag, -0.7 * mag}; break;
    case 3: c.g_ppm = mag; c.sector = Sector::odd; break;
    case 4: c.g_mpp = Complex{0.4 * mag, mag}; c.sector = Sector::odd; break;
    case 5: c.g_mmm = mag; c.sector = Sector::odd; break;
  }
  return c;
}

// Fourier coefficient at k + q of (d a/dt) / i for a = e^{ikx}, b = e^{iqx};
// q != 0 so the b^* part lands elsewhere.
Complex measured_vertex(const CouplingSet& c, const Grid1D& g, long mk, long mq) {
  FieldState s(g, 1);
  for (std::size_t n = 0; n < g.size(); ++n) {
    s.a()[n] = std::polar(1.0, mk * g.dk() * g.x(n));
    s.b()[n] = std::polar(1.0, mq * g.dk() * g.x(n));
  }
  const FieldDerivatives d = interaction_rhs(s, c);
  const ComplexField F = fft(d.da[0]);
  const long N = static_cast<long>(g.size());
  const long bin = ((mk + mq) % N + N) % N;
  return F[static_cast<std::size_t>(bin)] / static_cast<double>(N) / Complex{0.0, 1.0};
}

}  // namespace

TEST_CASE("simple coupling is flat") {
  const CouplingSet c = CouplingSet::simple(3.5);
  for (double k : {-4.0, 0.0, 2.5})
    for (double q : {-1.0, 0.0, 7.0}) CHECK(vertex_amplitude(c, k, q) == Complex{3.5, 0.0});
}

TEST_CASE("forward and backward amplitudes") {
  CouplingSet c;
  c.g_ppp = 1.3;
  c.g_mmp = -0.2;
  c.g_mpm = {0.05, 0.3};
  for (double k : {0.0, 0.7, -2.0, 11.0}) {
    CHECK(forward_amplitude(c, k) == vertex_amplitude(c, k, 0.0));
    CHECK(backward_amplitude(c, k) == vertex_amplitude(c, k, -2.0 * k));
    const Complex fwd = c.g_ppp + c.g_mmp * k * k;
    const Complex bwd = c.g_ppp - k * k * c.g_mmp + 2.0 * k * k * (c.g_mpm + std::conj(c.g_mpm));
    CHECK(std::abs(forward_amplitude(c, k) - fwd) <= 1e-14 * std::abs(fwd));
    CHECK(std::abs(backward_amplitude(c, k) - bwd) <= 1e-14 * std::abs(bwd) + 1e-15);
  }
  CouplingSet m;
  m.g_ppp = 2.0;
  m.g_mmp = 0.4;
  const double k = 3.0;
  CHECK(std::abs(forward_amplitude(m, k) - backward_amplitude(m, k) - 2.0 * k * k * m.g_mmp) < 1e-13);
  CHECK(forward_amplitude(m, 0.0) == Complex{2.0, 0.0});
  CHECK(backward_amplitude(m, 0.0) == Complex{2.0, 0.0});
  const CouplingSet s = CouplingSet::simple(1.0);
  CHECK(forward_amplitude(s, 5.0) == backward_amplitude(s, 5.0));
}

TEST_CASE("spectral cross-check of every coupling constant") {
  const Grid1D g(64, 2.0 * kPi / 64.0 / 0.5);  // dk = 0.5
  const long pairs[][2] = {{3, 5}, {-4, 2}, {7, -3}, {0, 6}, {5, -10}, {-2, 9}};
  for (int which = 0; which < 6; ++which) {
    const CouplingSet c = only(which, 0.9);
    for (const auto& p : pairs) {
      const Complex expect = vertex_amplitude(c, p[0] * g.dk(), p[1] * g.dk());
      const Complex got = measured_vertex(c, g, p[0], p[1]);
      INFO("constant " << which << " k " << p[0] << " q " << p[1] << " expect " << expect << " got " << got);
      CHECK(std::abs(got - expect) <= 1e-10 * std::max(std::abs(expect), 1.0));
    }
  }
}

TEST_CASE("branch set validation") {
  BranchSet b;
  b.branches = {{DispersionSpec::linear(0, 1), "p"}, {DispersionSpec::linear(0, 1), "s"}};
  b.g0_matrix = {1.0, Complex{0.0, 2.0}, Complex{0.0, -2.0}, 0.5};
  CHECK_NOTHROW(b.validate());
  const InteractionModel m = b.interaction_model();
  CHECK(m.intra[0].g_ppp == 1.0);
  CHECK(m.intra[1].g_ppp == 0.5);
  CHECK(m.g_inter(0, 1) == Complex{0.0, 2.0});
  CHECK(m.g_inter(1, 1) == Complex{});
  CHECK_NOTHROW(m.validate());
  b.g0_matrix[2] = Complex{0.0, 2.0};
  CHECK_THROWS_AS(b.validate(), std::invalid_argument);
  b.g0_matrix = {1.0, 2.0, 2.0};
  CHECK_THROWS_AS(b.validate(), std::invalid_argument);
}

TEST_CASE("forward comb sidebands follow the phase-modulation spectrum") {
  CombParams p;
  p.n_points = 256;
  p.periods = 5;
  p.sidebands = 3;
  const CombResult r = forward_comb(p);
  CHECK(r.modulation_index == doctest::Approx(1.0));
  CHECK(r.max_asymmetry < 1e-3);
  double total = 0.0;
  for (std::size_t i = 0; i < r.order.size(); ++i) {
    total += r.power[i];
    if (std::abs(r.order[i]) <= 2) CHECK(r.power[i] == doctest::Approx(r.bessel[i]).epsilon(0.02));
  }
  CHECK(total == doctest::Approx(p.power).epsilon(0.01));
}
