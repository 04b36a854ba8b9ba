#include "cwom/brillouin/brillouin.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cwom/dynamics/boundary.hpp"
#include "cwom/dynamics/model.hpp"
#include "cwom/dynamics/stepper.hpp"

namespace cwom {
namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string("brillouin: ") + what + " must be positive");
}

}  // namespace

double BrillouinParams::pump_power() const {
  if (g0_12 == 0.0) return 0.0;
  return std::norm(g12) / (g0_12 * g0_12) * kHbar * omega1 * v1;
}

BrillouinParams BrillouinParams::from_pump(double g0_12, double P1, double v1, double v2, double vb,
                                           double Gamma, double kappa2, double omega1, double Omega0) {
  BrillouinParams p;
  p.g0_12 = g0_12;
  p.v1 = v1;
  p.v2 = v2;
  p.vb = vb;
  p.Gamma = Gamma;
  p.kappa2 = kappa2;
  p.omega1 = omega1;
  p.Omega0 = Omega0;
  p.Omega = Omega0;
  p.omega2 = omega1 - Omega0;
  require_positive(omega1, "omega1");
  if (!(P1 >= 0.0)) throw std::invalid_argument("brillouin: pump power must be >= 0");
  p.g12 = g0_12 * std::sqrt(P1 / (kHbar * omega1 * v1));
  p.validate();
  return p;
}

void BrillouinParams::validate() const {
  require_positive(v1, "v1");
  require_positive(v2, "v2");
  require_positive(vb, "vb");
  require_positive(Gamma, "Gamma");
  require_positive(omega1, "omega1");
  if (!(kappa2 >= 0.0)) throw std::invalid_argument("brillouin: kappa2 must be >= 0");
}

double brillouin_gain(double g0_12, double v1, double v2, double Gamma, double omega1) {
  if (Gamma == 0.0) throw std::invalid_argument("brillouin_gain: Gamma = 0 has no local phonon response");
  require_positive(v1, "v1");
  require_positive(v2, "v2");
  require_positive(Gamma, "Gamma");
  require_positive(omega1, "omega1");
  return 4.0 * g0_12 * g0_12 / (v1 * v2 * Gamma * kHbar * omega1);
}

double g0_from_gain(double G_B, double v1, double v2, double Gamma, double omega1) {
  if (!(G_B >= 0.0)) throw std::invalid_argument("g0_from_gain: gain must be >= 0");
  require_positive(Gamma, "Gamma");
  return std::sqrt(G_B * v1 * v2 * Gamma * kHbar * omega1 / 4.0);
}

Complex nonlinear_susceptibility(double Omega, const BrillouinParams& p) {
  return -(p.g0_12 * p.g0_12 / p.v2) / Complex{Omega - p.Omega0, -0.5 * p.Gamma};
}

double gain_from_susceptibility(double Omega, const BrillouinParams& p) {
  return -2.0 * nonlinear_susceptibility(Omega, p).imag() / (kHbar * p.omega1 * p.v1);
}

double gain_spectrum(double Omega, const BrillouinParams& p) {
  const double h = 0.5 * p.Gamma, d = Omega - p.Omega0;
  return brillouin_gain(p.g0_12, p.v1, p.v2, p.Gamma, p.omega1) * h * h / (d * d + h * h);
}

AdiabaticResult adiabatic_eliminate(const BrillouinParams& p) {
  p.validate();
  AdiabaticResult r;
  r.decay_ratio = p.gamma2() > 0.0 ? p.gamma_b() / p.gamma2() : INFINITY;
  if (r.decay_ratio < 10.0)
    throw std::invalid_argument("adiabatic_eliminate: phonon decay length must be at least 10x shorter than the optical one");
  if (r.decay_ratio < 100.0) r.warnings.push_back("adiabatic_eliminate: gamma_b/gamma2 below 100, local response is approximate");
  const Complex den{0.5 * p.Gamma, p.Omega - p.Omega0};
  const Complex rate = std::norm(p.g12) / (p.v2 * den);
  r.amplitude_gain = rate.real();
  r.phase_rate = rate.imag();
  r.net_amplitude_rate = r.amplitude_gain - 0.5 * p.gamma2();
  r.power_slope = 2.0 * r.net_amplitude_rate;
  r.phonon_transfer = Complex{0.0, 1.0} * p.g12 / std::conj(den);
  return r;
}

AdiabaticResult adiabatic_eliminate(const ComplexField& a2, const BrillouinParams& p) {
  AdiabaticResult r = adiabatic_eliminate(p);
  r.phonon.resize(a2.size());
  for (std::size_t i = 0; i < a2.size(); ++i) r.phonon[i] = r.phonon_transfer * std::conj(a2[i]);
  return r;
}

double printed_gain_coefficient(const BrillouinParams& p) { return std::norm(p.g12) / (p.v1 * p.Gamma); }

double wave_power(double omega, double v, Complex amplitude) {
  return kHbar * omega * std::abs(v) * std::norm(amplitude);
}

double phonon_power(Complex b, const BrillouinParams& p) { return wave_power(p.Omega, p.vb, b); }

GainRunResult simulate_gain(const BrillouinParams& p, const GainRunConfig& cfg) {
  p.validate();
  const AdiabaticResult ad = adiabatic_eliminate(p);
  if (!(ad.power_slope > 0.0)) throw std::invalid_argument("simulate_gain: no net small-signal gain");
  if (cfg.n_points < 64) throw std::invalid_argument("simulate_gain: need at least 64 points");
  const double s2 = cfg.counter_propagating ? -1.0 : 1.0;

  Model m;
  m.boundary.kind = BoundaryKind::open;
  m.grid = Grid1D(cfg.n_points, 1.0);
  const OpenLayout unit = open_layout(m);
  const double dx = cfg.span_gain_lengths / ad.power_slope / static_cast<double>(unit.interior_end - unit.interior_begin);
  m.grid = Grid1D(cfg.n_points, dx);

  // carriers far outside the band so that only the phase-matched term survives
  const double q = 4.0 * m.grid.k_max();
  const double k1 = cfg.counter_propagating ? 0.5 * q : 2.0 * q;
  const double k2 = k1 - q;
  const double omega2 = p.omega1 - p.Omega;
  const double Omega_c = p.omega1 - omega2;

  m.photons.push_back({"pump", DispersionSpec::linear(p.omega1 - p.v1 * k1, p.v1), {k1, p.omega1}, 0.0});
  m.photons.push_back({"stokes", DispersionSpec::linear(omega2 - s2 * p.v2 * k2, s2 * p.v2), {k2, omega2}, p.kappa2});
  m.phonon_dispersion = DispersionSpec::linear(p.Omega0 - p.vb * q, p.vb);
  m.phonon_carrier = {q, Omega_c};
  m.interaction.intra = {CouplingSet{}, CouplingSet{}};
  m.interaction.inter = {Complex{}, std::conj(Complex{p.g0_12}), Complex{p.g0_12}, Complex{}};
  m.bath.gamma_mech = p.Gamma;

  const double P1 = p.pump_power();
  const double ramp = 5.0 / p.Gamma;
  DriveSpec pump;
  pump.branch = 0;
  pump.alpha_in = std::sqrt(P1 / (kHbar * p.omega1));
  pump.omega_L = p.omega1;
  pump.k_L = k1;
  pump.ramp_time = ramp;
  DriveSpec seed = pump;
  seed.branch = 1;
  seed.alpha_in = std::sqrt(cfg.seed_fraction * P1 / (kHbar * omega2));
  seed.omega_L = omega2;
  seed.k_L = k2;
  m.drives = {pump, seed};
  m.validate();

  FieldState state = m.vacuum();
  const double bound = stability_bound(m, state);
  const double dt = std::min(cfg.dt_fraction / p.Gamma, 0.9 * bound);
  const double transit = m.grid.length() / std::min(p.v1, p.v2);
  const double T = 3.0 * transit + ramp + cfg.settle_decay_times / p.Gamma;
  const auto steps = static_cast<std::size_t>(std::ceil(T / dt));

  Stepper stepper(m, dt);
  stepper.set_noise(false);
  for (std::size_t n = 0; n < steps; ++n) stepper.step(state);

  GainRunResult r;
  r.steps = steps;
  r.dt = dt;
  r.predicted_slope = ad.power_slope;
  const OpenLayout lay = open_layout(m);
  for (std::size_t i = lay.interior_begin; i < lay.interior_end; ++i) {
    r.x.push_back(m.grid.x(i));
    r.P1.push_back(wave_power(p.omega1, p.v1, state.photons[0][i]));
    r.P2.push_back(wave_power(omega2, p.v2, state.photons[1][i]));
    r.Pb.push_back(phonon_power(state.phonon[i], p));
  }
  r.pump_depletion = 1.0 - r.P1.back() / r.P1.front();

  // least-squares slope of ln P2 along the Stokes direction
  const double skip = cfg.skip_decay_lengths / p.gamma_b();
  const double x0 = r.x.front(), x1 = r.x.back();
  double sw = 0, ss = 0, sy = 0, sss = 0, ssy = 0, smin = INFINITY, smax = -INFINITY;
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    const double s = cfg.counter_propagating ? x1 - r.x[i] : r.x[i] - x0;
    if (s < skip) continue;
    const double y = std::log(r.P2[i]);
    sw += 1;
    ss += s;
    sy += y;
    sss += s * s;
    ssy += s * y;
    smin = std::min(smin, s);
    smax = std::max(smax, s);
  }
  if (sw < 3) throw std::runtime_error("simulate_gain: fit window too short");
  r.measured_slope = (sw * ssy - ss * sy) / (sw * sss - ss * ss);
  r.relative_error = std::abs(r.measured_slope - r.predicted_slope) / r.predicted_slope;
  r.fit_gain_lengths = (smax - smin) * r.predicted_slope;
  return r;
}

}  // namespace cwom
