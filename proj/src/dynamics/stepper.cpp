#include "cwom/dynamics/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cwom/core/interaction.hpp"
#include "cwom/core/spectral.hpp"
#include "cwom/dynamics/noise.hpp"

namespace cwom {
namespace {

constexpr Complex kI{0.0, 1.0};

Complex side_factor(const DriveSpec& d, const Model& m, double x, double t) {
  const double wc = m.photons[d.branch].carrier.omega;
  return std::sqrt(d.kappa_ex) * d.ramp(t) * d.profile(x, t) * std::polar(1.0, -(d.omega_L - wc) * t);
}

bool model_has_interaction(const InteractionModel& im) {
  for (const auto& c : im.intra)
    if (!c.is_zero()) return true;
  for (const auto& g : im.inter)
    if (g != Complex{}) return true;
  return false;
}

void axpy(ComplexField& y, Complex a, const ComplexField& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

FieldState shifted(const FieldState& s, const FieldDerivatives& d, double h, double t) {
  FieldState y = s;
  for (std::size_t j = 0; j < y.branches(); ++j) axpy(y.photons[j], h, d.da[j]);
  axpy(y.phonon, h, d.db);
  y.time = t;
  return y;
}

double drive_field_scale(const Model& m) {
  double s = 0.0;
  for (const auto& d : m.drives) {
    if (d.mode == DriveMode::endfire) {
      const double v = std::abs(m.photon_velocity(d.branch));
      if (v > 0.0) s = std::max(s, std::abs(d.alpha_in) / std::sqrt(v));
    } else if (d.kappa_ex > 0.0) {
      const double k = m.photon_kappa(d.branch);
      if (k > 0.0) s = std::max(s, 2.0 * std::sqrt(d.kappa_ex) * std::abs(d.profile(0.0, 0.0)) / k);
    }
  }
  return s;
}

}  // namespace

void linear_factors(const RealField& omega, double rate, double h, ComplexField& exp_h, ComplexField& phi_h) {
  exp_h.resize(omega.size());
  phi_h.resize(omega.size());
  for (std::size_t i = 0; i < omega.size(); ++i) {
    const Complex L{-0.5 * rate, -omega[i]};
    const Complex z = L * h;
    exp_h[i] = std::exp(z);
    if (std::abs(z) < 1e-3)
      phi_h[i] = h * (1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0);
    else
      phi_h[i] = (exp_h[i] - 1.0) / L;
  }
}

double stability_bound(const Model& model, const FieldState& state) {
  const Grid1D& g = model.grid;
  const double scale = std::max(state.field_scale(), drive_field_scale(model));
  double rate = 0.0;
  const InteractionModel& im = model.interaction;
  for (std::size_t j = 0; j < im.branches(); ++j) {
    double r = im.intra[j].rate_scale(g.k_max());
    for (std::size_t l = 0; l < im.branches(); ++l) r += std::abs(im.g_inter(j, l));
    rate = std::max(rate, 2.0 * r * scale);
  }
  for (std::size_t j = 0; j < model.branches(); ++j) rate = std::max(rate, model.photon_kappa(j));
  rate = std::max(rate, model.bath.gamma_mech);
  // residual carrier frequencies of kept terms rotate inside the RK4 substep
  const std::size_t nb = model.branches();
  const Carrier& q = model.phonon_carrier;
  for (std::size_t j = 0; j < nb; ++j) {
    for (std::size_t l = 0; l < nb; ++l) {
      if (j != l && im.g_inter(j, l) == Complex{}) continue;
      if (j == l && im.intra[j].is_zero()) continue;
      const Carrier& cj = model.photons[j].carrier;
      const Carrier& cl = model.photons[l].carrier;
      for (int s : {1, -1}) {
        const Carrier d{cl.k + s * q.k - cj.k, cl.omega + s * q.omega - cj.omega};
        if (keeps_residual(d, im, g)) rate = std::max(rate, std::abs(d.omega));
      }
    }
  }
  const double transport = transport_bound(model) * (1.0 + 1e-12);
  if (rate == 0.0) return transport;
  return std::min(0.5 / rate, transport);
}

FieldDerivatives mean_field_rhs(const Model& model, const FieldState& state) {
  const Grid1D& g = model.grid;
  FieldDerivatives d;
  const bool inter = model_has_interaction(model.interaction);
  if (inter) {
    d = interaction_rhs(state, model.interaction);
  } else {
    d.da.assign(state.branches(), ComplexField(g.size()));
    d.db.assign(g.size(), Complex{});
  }
  const AbsorberProfile absorber = make_absorber(model);
  const std::vector<Entrance> entrances = build_entrances(model);
  auto linear = [&](const ComplexField& f, const DispersionSpec& disp, double rate, const RealField& sigma,
                    ComplexField& out) {
    const ComplexField lin = apply_multiplier(f, g, [&](double k) { return Complex{0.0, -disp(k)}; });
    for (std::size_t i = 0; i < f.size(); ++i) out[i] += lin[i] - (0.5 * rate + sigma[i]) * f[i];
  };
  for (std::size_t j = 0; j < state.branches(); ++j) {
    linear(state.photons[j], model.frame_dispersion(j), model.photon_kappa(j), absorber.photons[j], d.da[j]);
    const Entrance& e = entrances[j];
    if (e.direction != 0) {
      const Complex A = entrance_amplitude(model, j, state.time);
      if (A != Complex{}) axpy(d.da[j], A, ifft(e.source_spectrum));
    }
  }
  linear(state.phonon, model.frame_phonon_dispersion(), model.bath.gamma_mech, absorber.phonon, d.db);
  for (const auto& dr : model.drives) {
    if (dr.mode != DriveMode::side) continue;
    for (std::size_t i = 0; i < g.size(); ++i) d.da[dr.branch][i] += side_factor(dr, model, g.x(i), state.time);
  }
  return d;
}

Stepper::Stepper(const Model& model, double dt, std::uint64_t seed, std::uint64_t trajectory)
    : model_(model), dt_(dt), seed_(seed), trajectory_(trajectory) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("Stepper: dt must be positive");
  model_.validate();
  has_interaction_ = model_has_interaction(model_.interaction);
  const Grid1D& g = model_.grid;
  photon_lin_.resize(model_.branches());
  for (std::size_t j = 0; j < model_.branches(); ++j)
    linear_factors(model_.frame_dispersion(j).values_on(g), model_.photon_kappa(j), 0.5 * dt,
                   photon_lin_[j].exp_half, photon_lin_[j].phi_half);
  linear_factors(model_.frame_phonon_dispersion().values_on(g), model_.bath.gamma_mech, 0.5 * dt,
                 phonon_lin_.exp_half, phonon_lin_.phi_half);
  entrances_ = build_entrances(model_);
  absorber_ = make_absorber(model_);
}

void Stepper::linear_half(FieldState& s, double t_mid) const {
  for (std::size_t j = 0; j < s.branches(); ++j) {
    ComplexField F = fft(s.photons[j]);
    const LinearFactors& f = photon_lin_[j];
    const Entrance& e = entrances_[j];
    const Complex A = e.direction != 0 ? entrance_amplitude(model_, j, t_mid) : Complex{};
    for (std::size_t i = 0; i < F.size(); ++i) {
      F[i] *= f.exp_half[i];
      if (A != Complex{}) F[i] += f.phi_half[i] * A * e.source_spectrum[i];
    }
    s.photons[j] = ifft(F);
  }
  ComplexField B = fft(s.phonon);
  for (std::size_t i = 0; i < B.size(); ++i) B[i] *= phonon_lin_.exp_half[i];
  s.phonon = ifft(B);
}

void Stepper::add_drive_rhs(const FieldState& s, std::vector<ComplexField>& da) const {
  for (const auto& d : model_.drives) {
    if (d.mode != DriveMode::side) continue;
    for (std::size_t i = 0; i < s.grid.size(); ++i)
      da[d.branch][i] += side_factor(d, model_, s.grid.x(i), s.time);
  }
}

void Stepper::add_noise(FieldState& s) {
  const BathSpec& bath = model_.bath;
  if (!noise_ || bath.sampling != Sampling::wigner) return;
  Philox4x32 rng(seed_, trajectory_);
  rng.seek(static_cast<std::uint64_t>(count_) << 32);
  const Grid1D& g = model_.grid;
  for (std::size_t j = 0; j < s.branches(); ++j) {
    const double k = model_.photon_kappa(j);
    if (k <= 0.0) continue;
    const ComplexField xi = sample_noise_field(g, k, 0.0, dt_, rng);
    axpy(s.photons[j], dt_, xi);
  }
  if (bath.gamma_mech > 0.0) {
    const ComplexField xi = sample_noise_field(g, bath.gamma_mech, bath.thermal_occupation(), dt_, rng);
    axpy(s.phonon, dt_, xi);
  }
  if (model_.boundary.kind == BoundaryKind::open && model_.boundary.inject_noise)
    inject_boundary(s, model_, entrances_, dt_, rng);
}

void Stepper::step(FieldState& s) {
  const double t = s.time;
  const double h = dt_;
  linear_half(s, t + 0.25 * h);

  const bool side = std::any_of(model_.drives.begin(), model_.drives.end(),
                                [](const DriveSpec& d) { return d.mode == DriveMode::side; });
  if (has_interaction_ || side) {
    auto rhs = [&](const FieldState& y) {
      FieldDerivatives d;
      if (has_interaction_) {
        d = interaction_rhs(y, model_.interaction);
      } else {
        d.da.assign(y.branches(), ComplexField(y.grid.size()));
        d.db.assign(y.grid.size(), Complex{});
      }
      add_drive_rhs(y, d.da);
      return d;
    };
    FieldState y0 = s;
    y0.time = t;
    const FieldDerivatives k1 = rhs(y0);
    const FieldDerivatives k2 = rhs(shifted(y0, k1, 0.5 * h, t + 0.5 * h));
    const FieldDerivatives k3 = rhs(shifted(y0, k2, 0.5 * h, t + 0.5 * h));
    const FieldDerivatives k4 = rhs(shifted(y0, k3, h, t + h));
    for (std::size_t j = 0; j < s.branches(); ++j)
      for (std::size_t i = 0; i < s.grid.size(); ++i)
        s.photons[j][i] += h / 6.0 * (k1.da[j][i] + 2.0 * k2.da[j][i] + 2.0 * k3.da[j][i] + k4.da[j][i]);
    for (std::size_t i = 0; i < s.grid.size(); ++i)
      s.phonon[i] += h / 6.0 * (k1.db[i] + 2.0 * k2.db[i] + 2.0 * k3.db[i] + k4.db[i]);
  }
  if (model_.boundary.kind == BoundaryKind::open) s = absorbing_layer(s, absorber_, h);
  add_noise(s);

  linear_half(s, t + 0.75 * h);
  s.time = t + h;
  ++count_;
  if (!s.is_finite()) {
    std::ostringstream os;
    os << "divergence: non-finite field after step " << count_ << " at t = " << s.time
       << " s (dt = " << h << " s, stability bound " << stability_bound(model_, FieldState(s.grid, s.branches()))
       << " s at zero field)";
    throw DivergenceError(os.str(), s.time, count_);
  }
}

FieldState step(const FieldState& state, const Model& model, double dt, std::uint64_t seed,
                std::uint64_t trajectory) {
  Stepper st(model, dt, seed, trajectory);
  FieldState s = state;
  st.step(s);
  return s;
}

}  // namespace cwom
