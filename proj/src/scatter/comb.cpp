#include "cwom/scatter/comb.hpp"

#include <cmath>
#include <stdexcept>

#include "cwom/dynamics/boundary.hpp"
#include "cwom/dynamics/stepper.hpp"

namespace cwom {

CombResult forward_comb(const CombParams& p) {
  if (!(p.velocity > 0.0) || !(p.Omega0 > 0.0) || !(p.g0 > 0.0) || !(p.power > 0.0))
    throw std::invalid_argument("forward_comb: velocity, Omega0, g0 and power must be positive");
  if (p.n_points < 64 || p.sidebands < 1 || p.periods < 1)
    throw std::invalid_argument("forward_comb: need n_points >= 64, sidebands >= 1, periods >= 1");

  const double length = p.length > 0.0 ? p.length : kPi * p.velocity / p.Omega0;
  const double beta = p.beta != 0.0 ? p.beta : p.Omega0 / (4.0 * p.g0 * std::abs(std::sin(0.5 * p.Omega0 * length / p.velocity)));

  Model m;
  m.boundary.kind = BoundaryKind::open;
  m.grid = Grid1D(p.n_points, 1.0);
  const OpenLayout unit = open_layout(m);
  m.grid = Grid1D(p.n_points, length / static_cast<double>(unit.interior_end - unit.interior_begin));
  const double kL = p.omega_L / p.velocity;
  m.photons.push_back({"pump", DispersionSpec::linear(0.0, p.velocity), {kL, p.omega_L}, 0.0});
  m.phonon_dispersion = DispersionSpec::polynomial({p.Omega0});
  m.interaction.intra = {CouplingSet::simple(p.g0)};
  DriveSpec pump;
  pump.alpha_in = std::sqrt(p.power / (kHbar * p.omega_L));
  pump.omega_L = p.omega_L;
  pump.k_L = kL;
  m.drives = {pump};
  m.validate();

  FieldState s = m.vacuum();
  for (auto& b : s.phonon) b = beta;
  const OpenLayout lay = open_layout(m);
  const std::size_t exit = lay.interior_end - 1;
  const double dt = 0.9 * stability_bound(m, s);
  const double period = 2.0 * kPi / p.Omega0;
  const auto per = static_cast<std::size_t>(std::ceil(period / dt));
  const double h = period / static_cast<double>(per);
  const double transit = m.grid.x(exit) / p.velocity;
  const auto warm = static_cast<std::size_t>(std::ceil(2.0 * transit / h));
  const std::size_t window = per * p.periods;

  Stepper st(m, h);
  st.set_noise(false);
  for (std::size_t n = 0; n < warm; ++n) st.step(s);

  const int N = p.sidebands;
  std::vector<Complex> c(2 * N + 1);
  for (std::size_t n = 0; n < window; ++n) {
    st.step(s);
    for (int j = -N; j <= N; ++j)
      c[j + N] += s.photons[0][exit] * std::polar(1.0, j * p.Omega0 * s.time);
  }

  CombResult r;
  r.steps = warm + window;
  r.transit_time = length / p.velocity;
  r.modulation_index = 4.0 * std::abs(beta) * p.g0 / p.Omega0 * std::abs(std::sin(0.5 * p.Omega0 * r.transit_time));
  for (int j = -N; j <= N; ++j) {
    const Complex cj = c[j + N] / static_cast<double>(window);
    const double Jn = std::cyl_bessel_j(std::abs(j), r.modulation_index);
    r.order.push_back(j);
    r.power.push_back(kHbar * (p.omega_L + j * p.Omega0) * p.velocity * std::norm(cj));
    r.bessel.push_back(p.power * Jn * Jn);
  }
  for (int n = 1; n <= N; ++n) {
    const double up = r.power[N + n], down = r.power[N - n];
    r.max_asymmetry = std::max(r.max_asymmetry, std::abs(up - down) / std::max(up, down));
  }
  return r;
}

}  // namespace cwom
