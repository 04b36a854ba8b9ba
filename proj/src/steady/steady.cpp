#include "cwom/steady/steady.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cwom/core/spectral.hpp"
#include "cwom/dynamics/stepper.hpp"

namespace cwom {
namespace {

void fill_derived(const Model& model, SteadyState& s) {
  const std::size_t nb = s.fields.branches();
  s.alpha = s.fields.photons;
  s.beta = s.fields.phonon;
  s.g_lin.assign(nb, ComplexField(s.beta.size()));
  s.g_beta.assign(nb, RealField(s.beta.size()));
  for (std::size_t j = 0; j < nb; ++j) {
    const double g0 = model.interaction.intra[j].g_ppp;
    for (std::size_t i = 0; i < s.beta.size(); ++i) {
      s.g_lin[j][i] = g0 * s.alpha[j][i];
      s.g_beta[j][i] = 2.0 * g0 * s.beta[i].real();
    }
  }
}

double max_change(const FieldState& a, const FieldState& b) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.branches(); ++j)
    for (std::size_t i = 0; i < a.photons[j].size(); ++i) m = std::max(m, std::abs(a.photons[j][i] - b.photons[j][i]));
  for (std::size_t i = 0; i < a.phonon.size(); ++i) m = std::max(m, std::abs(a.phonon[i] - b.phonon[i]));
  return m;
}

struct Polisher {
  std::vector<ComplexField> photon_phi;
  ComplexField phonon_phi;

  Polisher(const Model& m, double h) {
    ComplexField e;
    for (std::size_t j = 0; j < m.branches(); ++j) {
      photon_phi.emplace_back();
      linear_factors(m.frame_dispersion(j).values_on(m.grid), m.photon_kappa(j), h, e, photon_phi.back());
    }
    linear_factors(m.frame_phonon_dispersion().values_on(m.grid), m.bath.gamma_mech, h, e, phonon_phi);
  }

  // F <- F + phi(h) * rhs, the exponential Euler step written in terms of the full rhs
  void apply(const Model& m, FieldState& s) const {
    const FieldDerivatives d = mean_field_rhs(m, s);
    auto update = [](ComplexField& f, const ComplexField& rhs, const ComplexField& phi) {
      ComplexField R = fft(rhs);
      for (std::size_t i = 0; i < R.size(); ++i) R[i] *= phi[i];
      const ComplexField dr = ifft(R);
      for (std::size_t i = 0; i < f.size(); ++i) f[i] += dr[i];
    };
    for (std::size_t j = 0; j < s.branches(); ++j) update(s.photons[j], d.da[j], photon_phi[j]);
    update(s.phonon, d.db, phonon_phi);
  }
};

}  // namespace

double relaxation_rate(const Model& model) {
  double r = model.bath.gamma_mech;
  for (std::size_t j = 0; j < model.branches(); ++j) r = std::max(r, model.photon_kappa(j));
  return r;
}

double steady_residual(const Model& model, const FieldState& state) {
  const double scale = state.field_scale();
  if (scale == 0.0) {
    // vacuum: any nonzero rhs comes from the drives
    const FieldDerivatives d = mean_field_rhs(model, state);
    double m = 0.0;
    for (const auto& f : d.da)
      for (const auto& v : f) m = std::max(m, std::abs(v));
    for (const auto& v : d.db) m = std::max(m, std::abs(v));
    return m == 0.0 ? 0.0 : INFINITY;
  }
  const FieldDerivatives d = mean_field_rhs(model, state);
  double m = 0.0;
  for (const auto& f : d.da)
    for (const auto& v : f) m = std::max(m, std::abs(v));
  for (const auto& v : d.db) m = std::max(m, std::abs(v));
  return m / (scale * relaxation_rate(model));
}

SteadyState SteadyState::from_fields(const Model& model, const FieldState& fields, std::string label) {
  SteadyState s;
  s.fields = fields;
  s.label = std::move(label);
  s.residual = steady_residual(model, fields);
  fill_derived(model, s);
  return s;
}

SteadyState find_steady_state(const Model& model, const SteadyConfig& cfg) {
  model.validate();
  for (std::size_t j = 0; j < model.branches(); ++j)
    if (!(model.photon_kappa(j) > 0.0)) throw std::invalid_argument("find_steady_state: every photon branch needs kappa > 0");
  if (!(model.bath.gamma_mech > 0.0)) throw std::invalid_argument("find_steady_state: Gamma must be > 0");
  double ramp_end = 0.0;
  for (const auto& d : model.drives) {
    if (d.omega_L != model.photons[d.branch].carrier.omega)
      throw std::invalid_argument("find_steady_state: drives must sit at their branch carrier frequency");
    ramp_end = std::max(ramp_end, d.ramp_time);
  }
  if (cfg.check_every == 0 || !(cfg.tol > 0.0)) throw std::invalid_argument("find_steady_state: bad config");

  const double nu = relaxation_rate(model);
  FieldState state = model.vacuum();
  const double bound = stability_bound(model, state);
  const double dt = cfg.dt > 0.0 ? cfg.dt : std::min(0.9 * bound, 0.1 / nu);

  SteadyState out;
  out.label = "reached from vacuum with ramped cw drive";
  Stepper stepper(model, dt);
  stepper.set_noise(false);

  // march
  std::size_t n = 0;
  FieldState prev = state;
  for (;;) {
    if (n >= cfg.max_steps) {
      std::ostringstream os;
      os << "find_steady_state: no convergence after " << n << " steps";
      throw ConvergenceError(os.str(), out.history);
    }
    stepper.step(state);
    ++n;
    if (n % cfg.check_every != 0) continue;
    const double scale = state.field_scale();
    const double change = scale == 0.0 ? 0.0 : max_change(state, prev) / (scale * nu * dt * static_cast<double>(cfg.check_every));
    prev = state;
    out.history.push_back(change);
    if (state.time < ramp_end) continue;
    if (scale == 0.0 || change < cfg.march_tol) break;
  }

  // polish: exponential Euler with step backoff if the residual grows
  double h = dt;
  FieldState best = state;
  double best_r = steady_residual(model, state);
  Polisher pol(model, h);
  std::size_t since_best = 0;
  while (best_r > cfg.tol) {
    if (n >= cfg.max_steps) {
      std::ostringstream os;
      os << "find_steady_state: polish stalled at residual " << best_r << " after " << n << " steps";
      throw ConvergenceError(os.str(), out.history);
    }
    pol.apply(model, state);
    ++n;
    const double r = steady_residual(model, state);
    if (!std::isfinite(r) || r > 10.0 * best_r) {
      h *= 0.5;
      pol = Polisher(model, h);
      state = best;
      since_best = 0;
      continue;
    }
    if (r < best_r) {
      best_r = r;
      best = state;
      since_best = 0;
    } else if (++since_best > 1000) {
      h *= 0.5;
      pol = Polisher(model, h);
      state = best;
      since_best = 0;
    }
    if (n % cfg.check_every == 0) out.history.push_back(r);
  }
  out.fields = best;
  out.residual = best_r;
  out.history.push_back(best_r);
  out.steps = n;
  fill_derived(model, out);
  return out;
}

}  // namespace cwom
