#include "cwom/steady/linearized.hpp"

#include <cmath>
#include <stdexcept>

#include "cwom/core/spectral.hpp"
#include "cwom/dynamics/boundary.hpp"
#include "cwom/dynamics/stepper.hpp"

namespace cwom {
namespace {

constexpr Complex kI{0.0, 1.0};

Carrier neg(const Carrier& c) { return {-c.k, -c.omega}; }

std::vector<Wave> waves(const std::vector<ComplexField>& env, const std::vector<Carrier>& c, bool negate) {
  std::vector<Wave> w;
  for (std::size_t j = 0; j < env.size(); ++j) w.push_back({env[j], negate ? neg(c[j]) : c[j]});
  return w;
}

void add(ComplexField& acc, const ComplexField& x, Complex s = 1.0) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += s * x[i];
}

// omega(-k) on the grid axis, for the conjugate partner
RealField mirrored(const RealField& w) {
  const std::size_t n = w.size();
  RealField m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = w[(n - i) % n];
  return m;
}

ComplexField exp_factor(const RealField& w, double rate, double h, double sign) {
  ComplexField e(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) e[i] = std::exp(Complex{-0.5 * rate * h, -sign * w[i] * h});
  return e;
}

}  // namespace

Fluctuation Fluctuation::physical(const FieldState& p) {
  Fluctuation f;
  f.grid = p.grid;
  f.time = p.time;
  f.a = p.photons;
  for (const auto& a : p.photons) {
    ComplexField c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = std::conj(a[i]);
    f.abar.push_back(std::move(c));
  }
  f.b = p.phonon;
  f.bbar.resize(p.phonon.size());
  for (std::size_t i = 0; i < p.phonon.size(); ++i) f.bbar[i] = std::conj(p.phonon[i]);
  return f;
}

FieldState Fluctuation::plain(const FieldState& carriers_from) const {
  FieldState s = carriers_from;
  s.photons = a;
  s.phonon = b;
  s.time = time;
  return s;
}

FluctuationRates linearized_interaction(const Fluctuation& f, const SteadyState& steady, const Model& model) {
  const FieldState& st = steady.fields;
  const Grid1D& g = model.grid;
  const InteractionModel& im = model.interaction;
  const std::vector<Carrier>& pc = st.photon_carriers;
  const std::vector<Carrier> pc_bar = [&] {
    std::vector<Carrier> v;
    for (const auto& c : pc) v.push_back(neg(c));
    return v;
  }();
  const Carrier q = st.phonon_carrier;
  const double t = f.time;

  const PolarizedArgs s0 = polarize(st);
  const std::vector<Wave> da = waves(f.a, pc, false), dabar = waves(f.abar, pc, true);
  const Wave db{f.b, q}, dbbar{f.bbar, neg(q)};

  FluctuationRates r;
  // photon channels are bilinear in (photon, displacement)
  r.da = photon_channel(da, s0.b, s0.bbar, pc, im, g, t, false);
  const auto da2 = photon_channel(s0.a, db, dbbar, pc, im, g, t, false);
  r.dabar = photon_channel(dabar, s0.b, s0.bbar, pc_bar, im, g, t, true);
  const auto dabar2 = photon_channel(s0.abar, db, dbbar, pc_bar, im, g, t, true);
  for (std::size_t j = 0; j < r.da.size(); ++j) {
    add(r.da[j], da2[j]);
    add(r.dabar[j], dabar2[j]);
  }
  // phonon source is bilinear in (a, abar)
  ComplexField S = phonon_source(da, s0.abar, q, im, g, t);
  add(S, phonon_source(s0.a, dabar, q, im, g, t));
  ComplexField Sbar = phonon_source(da, s0.abar, neg(q), im, g, t);
  add(Sbar, phonon_source(s0.a, dabar, neg(q), im, g, t));
  r.db.assign(g.size(), Complex{});
  r.dbbar.assign(g.size(), Complex{});
  add(r.db, S, kI);
  add(r.dbbar, Sbar, -kI);
  return r;
}

FluctuationRates linearized_rhs(const Fluctuation& f, const SteadyState& steady, const Model& model) {
  FluctuationRates r = linearized_interaction(f, steady, model);
  const Grid1D& g = model.grid;
  const AbsorberProfile ab = make_absorber(model);
  auto linear = [&](const ComplexField& x, const RealField& w, double rate, const RealField& sigma, ComplexField& out,
                    double sign) {
    ComplexField X = fft(x);
    for (std::size_t i = 0; i < X.size(); ++i) X[i] *= Complex{-0.5 * rate, -sign * w[i]};
    const ComplexField lx = ifft(X);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += lx[i] - sigma[i] * x[i];
  };
  for (std::size_t j = 0; j < f.a.size(); ++j) {
    const RealField w = model.frame_dispersion(j).values_on(g);
    linear(f.a[j], w, model.photon_kappa(j), ab.photons[j], r.da[j], 1.0);
    linear(f.abar[j], mirrored(w), model.photon_kappa(j), ab.photons[j], r.dabar[j], -1.0);
  }
  const RealField wb = model.frame_phonon_dispersion().values_on(g);
  linear(f.b, wb, model.bath.gamma_mech, ab.phonon, r.db, 1.0);
  linear(f.bbar, mirrored(wb), model.bath.gamma_mech, ab.phonon, r.dbbar, -1.0);
  return r;
}

LinearizedStepper::LinearizedStepper(const Model& model, const SteadyState& steady, double dt)
    : model_(model), steady_(steady), dt_(dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("LinearizedStepper: dt must be positive");
  const Grid1D& g = model.grid;
  for (std::size_t j = 0; j < model.branches(); ++j) {
    const RealField w = model.frame_dispersion(j).values_on(g);
    exp_a_.push_back(exp_factor(w, model.photon_kappa(j), 0.5 * dt, 1.0));
    exp_abar_.push_back(exp_factor(mirrored(w), model.photon_kappa(j), 0.5 * dt, -1.0));
  }
  const RealField wb = model.frame_phonon_dispersion().values_on(g);
  exp_b_ = exp_factor(wb, model.bath.gamma_mech, 0.5 * dt, 1.0);
  exp_bbar_ = exp_factor(mirrored(wb), model.bath.gamma_mech, 0.5 * dt, -1.0);
  const AbsorberProfile ab = make_absorber(model);
  absorb_a_ = ab.photons;
  absorb_b_ = ab.phonon;
}

void LinearizedStepper::linear_half(Fluctuation& f) const {
  auto apply = [](ComplexField& x, const ComplexField& e) {
    ComplexField X = fft(x);
    for (std::size_t i = 0; i < X.size(); ++i) X[i] *= e[i];
    x = ifft(X);
  };
  for (std::size_t j = 0; j < f.a.size(); ++j) {
    apply(f.a[j], exp_a_[j]);
    apply(f.abar[j], exp_abar_[j]);
  }
  apply(f.b, exp_b_);
  apply(f.bbar, exp_bbar_);
}

void LinearizedStepper::step(Fluctuation& f) const {
  const double h = dt_;
  linear_half(f);
  // RK4 on the interaction
  auto axpy = [](const Fluctuation& x, const FluctuationRates& k, double s) {
    Fluctuation y = x;
    for (std::size_t j = 0; j < y.a.size(); ++j)
      for (std::size_t i = 0; i < y.a[j].size(); ++i) {
        y.a[j][i] += s * k.da[j][i];
        y.abar[j][i] += s * k.dabar[j][i];
      }
    for (std::size_t i = 0; i < y.b.size(); ++i) {
      y.b[i] += s * k.db[i];
      y.bbar[i] += s * k.dbbar[i];
    }
    return y;
  };
  Fluctuation mid = f;
  mid.time = f.time + 0.5 * h;
  const FluctuationRates k1 = linearized_interaction(mid, steady_, model_);
  const FluctuationRates k2 = linearized_interaction(axpy(mid, k1, 0.5 * h), steady_, model_);
  const FluctuationRates k3 = linearized_interaction(axpy(mid, k2, 0.5 * h), steady_, model_);
  const FluctuationRates k4 = linearized_interaction(axpy(mid, k3, h), steady_, model_);
  auto combine = [h](ComplexField& x, const ComplexField& a, const ComplexField& b, const ComplexField& c,
                     const ComplexField& d) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += h / 6.0 * (a[i] + 2.0 * b[i] + 2.0 * c[i] + d[i]);
  };
  for (std::size_t j = 0; j < f.a.size(); ++j) {
    combine(f.a[j], k1.da[j], k2.da[j], k3.da[j], k4.da[j]);
    combine(f.abar[j], k1.dabar[j], k2.dabar[j], k3.dabar[j], k4.dabar[j]);
  }
  combine(f.b, k1.db, k2.db, k3.db, k4.db);
  combine(f.bbar, k1.dbbar, k2.dbbar, k3.dbbar, k4.dbbar);
  for (std::size_t j = 0; j < f.a.size(); ++j)
    for (std::size_t i = 0; i < f.a[j].size(); ++i) {
      const double e = std::exp(-absorb_a_[j][i] * h);
      f.a[j][i] *= e;
      f.abar[j][i] *= e;
    }
  for (std::size_t i = 0; i < f.b.size(); ++i) {
    const double e = std::exp(-absorb_b_[i] * h);
    f.b[i] *= e;
    f.bbar[i] *= e;
  }
  linear_half(f);
  f.time += h;
}

}  // namespace cwom
