#include "cwom/lattice/array.hpp"

#include <cmath>
#include <stdexcept>

#include "cwom/core/spectral.hpp"
#include "cwom/dynamics/rng.hpp"
#include "cwom/dynamics/stepper.hpp"

namespace cwom {
namespace {

void check_hops(const std::map<int, double>& hops, const char* name) {
  for (const auto& [l, v] : hops) {
    if (l < 1) throw std::invalid_argument(std::string("ArrayConfig: hop distance in ") + name + " must be >= 1");
    if (!std::isfinite(v)) throw std::invalid_argument(std::string("ArrayConfig: non-finite ") + name);
  }
}

double band_at(const std::map<int, double>& hops, double onsite, double k, double dx) {
  double w = onsite;
  for (const auto& [l, J] : hops) w -= 2.0 * J * std::cos(k * l * dx);
  return w;
}

struct Fields {
  ComplexField a, b;
};

Fields axpy(const Fields& y, double h, const Fields& d) {
  Fields r = y;
  for (std::size_t i = 0; i < r.a.size(); ++i) {
    r.a[i] += h * d.a[i];
    r.b[i] += h * d.b[i];
  }
  return r;
}

class ArrayStepper {
 public:
  ArrayStepper(const ArrayConfig& cfg, const ArrayDrive& drive, double dt)
      : cfg_(cfg), drive_(drive), dt_(dt), n_(cfg.n_sites) {
    const double h = 0.5 * dt;
    if (cfg.periodic) {
      const Grid1D g(n_, cfg.dx_lattice);
      pa_.resize(n_);
      pb_.resize(n_);
      for (std::size_t i = 0; i < n_; ++i) {
        const double k = g.k(i);
        pa_[i] = std::exp(Complex{-0.5 * cfg.kappa, -band_at(cfg.J, cfg.omega_a, k, cfg.dx_lattice)} * h);
        pb_[i] = std::exp(Complex{-0.5 * cfg.Gamma, -band_at(cfg.K, cfg.omega_b, k, cfg.dx_lattice)} * h);
      }
    } else {
      pa_.assign(1, std::exp(Complex{-0.5 * cfg.kappa, -cfg.omega_a} * h));
      pb_.assign(1, std::exp(Complex{-0.5 * cfg.Gamma, -cfg.omega_b} * h));
    }
  }

  void step(ArrayState& s, Philox4x32& rng) {
    Fields f{std::move(s.a), std::move(s.b)};
    half(f);
    const double t = s.time + 0.5 * dt_;
    const Fields k1 = rhs(f, t);
    const Fields k2 = rhs(axpy(f, 0.5 * dt_, k1), t);
    const Fields k3 = rhs(axpy(f, 0.5 * dt_, k2), t);
    const Fields k4 = rhs(axpy(f, dt_, k3), t);
    for (std::size_t i = 0; i < n_; ++i) {
      f.a[i] += dt_ / 6.0 * (k1.a[i] + 2.0 * k2.a[i] + 2.0 * k3.a[i] + k4.a[i]);
      f.b[i] += dt_ / 6.0 * (k1.b[i] + 2.0 * k2.b[i] + 2.0 * k3.b[i] + k4.b[i]);
    }
    if (cfg_.sampling == Sampling::wigner) {
      ComplexNormal normal(rng);
      const double va = cfg_.kappa * 0.5 * dt_;
      const double vb = cfg_.Gamma * (cfg_.n_th + 0.5) * dt_;
      for (std::size_t i = 0; i < n_; ++i) {
        if (va > 0.0) f.a[i] += normal(va);
        if (vb > 0.0) f.b[i] += normal(vb);
      }
    }
    half(f);
    s.a = std::move(f.a);
    s.b = std::move(f.b);
    s.time += dt_;
  }

 private:
  void half(Fields& f) const {
    if (cfg_.periodic) {
      ComplexField A = fft(f.a), B = fft(f.b);
      for (std::size_t i = 0; i < n_; ++i) {
        A[i] *= pa_[i];
        B[i] *= pb_[i];
      }
      f.a = ifft(A);
      f.b = ifft(B);
    } else {
      for (auto& v : f.a) v *= pa_[0];
      for (auto& v : f.b) v *= pb_[0];
    }
  }

  // Neighbour index j + l, or -1 past an open edge.
  long site(long j, long l) const {
    const long n = static_cast<long>(n_);
    const long m = j + l;
    if (cfg_.periodic) return ((m % n) + n) % n;
    return (m < 0 || m >= n) ? -1 : m;
  }

  Fields rhs(const Fields& f, double t) const {
    const long n = static_cast<long>(n_);
    const Complex I{0.0, 1.0};
    Fields d{ComplexField(n_), ComplexField(n_)};
    for (long j = 0; j < n; ++j) {
      const double u = 2.0 * f.b[j].real();
      Complex da = I * cfg_.g0_site * f.a[j] * u;
      Complex db = I * cfg_.g0_site * std::norm(f.a[j]);
      if (cfg_.g0_link != 0.0) {
        const long r = site(j, 1), l = site(j, -1);
        if (r >= 0) {
          da += I * cfg_.g0_link * f.a[r] * u;
          db += I * cfg_.g0_link * 2.0 * (std::conj(f.a[r]) * f.a[j]).real();
        }
        if (l >= 0) da += I * cfg_.g0_link * f.a[l] * (2.0 * f.b[l].real());
      }
      if (!cfg_.periodic) {
        for (const auto& [hop, J] : cfg_.J)
          for (long s : {site(j, -hop), site(j, hop)})
            if (s >= 0) da += I * J * f.a[s];
        for (const auto& [hop, K] : cfg_.K)
          for (long s : {site(j, -hop), site(j, hop)})
            if (s >= 0) db += I * K * f.b[s];
      }
      if (drive_.amplitude && drive_.kappa_ex > 0.0)
        da += std::sqrt(drive_.kappa_ex) * drive_.amplitude(static_cast<std::size_t>(j), t);
      d.a[j] = da;
      d.b[j] = db;
    }
    return d;
  }

  const ArrayConfig& cfg_;
  const ArrayDrive& drive_;
  double dt_;
  std::size_t n_;
  ComplexField pa_, pb_;
};

}  // namespace

void ArrayConfig::validate() const {
  if (n_sites < 2) throw std::invalid_argument("ArrayConfig: need at least two sites");
  if (!(dx_lattice > 0.0) || !std::isfinite(dx_lattice))
    throw std::invalid_argument("ArrayConfig: dx_lattice must be positive");
  check_hops(J, "J");
  check_hops(K, "K");
  for (double v : {omega_a, omega_b, g0_site, g0_link})
    if (!std::isfinite(v)) throw std::invalid_argument("ArrayConfig: non-finite frequency or coupling");
  if (!(kappa >= 0.0) || !(Gamma >= 0.0) || !(n_th >= 0.0))
    throw std::invalid_argument("ArrayConfig: rates and occupation must be non-negative");
}

double ArrayState::photon_number() const {
  double s = 0.0;
  for (const auto& v : a) s += std::norm(v);
  return s;
}

double ArrayState::phonon_number() const {
  double s = 0.0;
  for (const auto& v : b) s += std::norm(v);
  return s;
}

RealField band_structure(const std::map<int, Complex>& J_signed, double dx_lattice, const RealField& k) {
  if (!(dx_lattice > 0.0)) throw std::invalid_argument("band_structure: dx_lattice must be positive");
  double scale = 0.0;
  for (const auto& [l, J] : J_signed) scale += std::abs(J);
  RealField out(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    Complex w{0.0, 0.0};
    for (const auto& [l, J] : J_signed) w -= J * std::polar(1.0, -k[i] * l * dx_lattice);
    if (std::abs(w.imag()) > 1e-12 * std::max(scale, 1e-300))
      throw std::invalid_argument("band_structure: hopping is not Hermitian (complex band)");
    out[i] = w.real();
  }
  return out;
}

std::map<int, Complex> hermitian_hops(const std::map<int, double>& J) {
  std::map<int, Complex> out;
  for (const auto& [l, v] : J) {
    out[l] += v;
    out[-l] += v;
  }
  return out;
}

DispersionSpec continuum_dispersion(const std::map<int, double>& J, double dx_lattice, double omega_onsite) {
  double w0 = omega_onsite, d = 0.0;
  for (const auto& [l, v] : J) {
    w0 -= 2.0 * v;
    d += v * l * l * dx_lattice * dx_lattice;
  }
  return DispersionSpec::polynomial({w0, 0.0, d});
}

CouplingSet local_continuum_couplings(double g0_site, double dx_lattice) {
  return CouplingSet::simple(g0_site * std::sqrt(dx_lattice));
}

CouplingSet link_continuum_couplings(double g0_link, double dx_lattice) {
  const double g = g0_link * std::sqrt(dx_lattice);
  CouplingSet c;
  c.g_ppp = 2.0 * g;
  c.g_mmp = -g * dx_lattice * dx_lattice;
  c.g_mpm = Complex{-0.25 * g * dx_lattice * dx_lattice, 0.0};
  return c;
}

Model continuum_model(const ArrayConfig& cfg) {
  cfg.validate();
  if (!cfg.periodic) throw std::invalid_argument("continuum_model: only periodic arrays map onto the periodic grid");
  const CouplingSet site = local_continuum_couplings(cfg.g0_site, cfg.dx_lattice);
  CouplingSet c = link_continuum_couplings(cfg.g0_link, cfg.dx_lattice);
  c.g_ppp += site.g_ppp;
  Model m = Model::single(Grid1D(cfg.n_sites, cfg.dx_lattice),
                          continuum_dispersion(cfg.J, cfg.dx_lattice, cfg.omega_a),
                          continuum_dispersion(cfg.K, cfg.dx_lattice, cfg.omega_b), c);
  m.bath.kappa = cfg.kappa;
  m.bath.gamma_mech = cfg.Gamma;
  m.bath.n_th = cfg.n_th;
  m.bath.sampling = cfg.sampling;
  return m;
}

FieldState to_continuum(const ArrayState& s, double dx_lattice) {
  if (s.a.size() != s.b.size()) throw std::invalid_argument("to_continuum: photon and phonon sizes differ");
  FieldState f(Grid1D(s.a.size(), dx_lattice));
  const double r = 1.0 / std::sqrt(dx_lattice);
  for (std::size_t i = 0; i < s.a.size(); ++i) {
    f.a()[i] = s.a[i] * r;
    f.b()[i] = s.b[i] * r;
  }
  f.time = s.time;
  return f;
}

ArrayState from_continuum(const FieldState& f) {
  if (f.branches() != 1) throw std::invalid_argument("from_continuum: single photon branch expected");
  if (!f.photon_carriers[0].is_lab() || !f.phonon_carrier.is_lab())
    throw std::invalid_argument("from_continuum: lab-frame fields expected");
  const double r = std::sqrt(f.grid.dx());
  ArrayState s;
  s.a.resize(f.grid.size());
  s.b.resize(f.grid.size());
  for (std::size_t i = 0; i < f.grid.size(); ++i) {
    s.a[i] = f.a()[i] * r;
    s.b[i] = f.b()[i] * r;
  }
  s.time = f.time;
  return s;
}

ArrayTrajectory simulate_array(const ArrayConfig& cfg, const ArrayState& initial, const ArrayRunConfig& run,
                               const ArrayDrive& drive) {
  cfg.validate();
  if (initial.a.size() != cfg.n_sites || initial.b.size() != cfg.n_sites)
    throw std::invalid_argument("simulate_array: initial state does not match n_sites");
  if (!(run.dt > 0.0)) throw std::invalid_argument("simulate_array: dt must be positive");
  if (run.output_every == 0) throw std::invalid_argument("simulate_array: output_every must be >= 1");
  if (drive.kappa_ex < 0.0) throw std::invalid_argument("simulate_array: kappa_ex must be non-negative");

  ArrayStepper stepper(cfg, drive, run.dt);
  Philox4x32 rng(run.seed, run.trajectory);
  ArrayTrajectory out;
  ArrayState s = initial;
  auto record = [&] {
    out.times.push_back(s.time);
    out.photon_number.push_back(s.photon_number());
    out.phonon_number.push_back(s.phonon_number());
  };
  record();
  for (std::size_t n = 1; n <= run.steps; ++n) {
    stepper.step(s, rng);
    for (std::size_t i = 0; i < cfg.n_sites; ++i)
      if (!std::isfinite(s.a[i].real()) || !std::isfinite(s.a[i].imag()) || !std::isfinite(s.b[i].real()) ||
          !std::isfinite(s.b[i].imag()))
        throw std::runtime_error("simulate_array: non-finite field at t = " + std::to_string(s.time));
    if (n % run.output_every == 0 || n == run.steps) record();
  }
  out.final_state = std::move(s);
  return out;
}

double array_interaction_energy(const ArrayConfig& cfg, const ArrayState& s) {
  const std::size_t n = s.a.size();
  double e = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double u = 2.0 * s.b[j].real();
    e += cfg.g0_site * std::norm(s.a[j]) * u;
    if (cfg.g0_link != 0.0 && (cfg.periodic || j + 1 < n))
      e += cfg.g0_link * 2.0 * (std::conj(s.a[(j + 1) % n]) * s.a[j]).real() * u;
  }
  return e;
}

}  // namespace cwom

namespace cwom {
namespace {

Complex smooth_photon(double x, double kappa) {
  return 1.0 + 0.3 * std::polar(1.0, kappa * x) + 0.2 * std::polar(1.0, -2.0 * kappa * x) +
         0.15 * std::polar(1.0, 2.0 * kappa * x);
}

Complex smooth_phonon(double x, double kappa) {
  return 0.2 * std::polar(1.0, kappa * x) + Complex{0.0, 0.1} * std::polar(1.0, -kappa * x);
}

}  // namespace

ArrayConvergenceResult array_convergence(const ArrayConvergenceSpec& spec) {
  if (spec.n_min < 4 || spec.halvings < 1) throw std::invalid_argument("array_convergence: need n_min >= 4 and halvings >= 1");
  const std::size_t n_max = spec.n_min << spec.halvings;
  if (spec.fine_points < 2 * n_max || spec.fine_points % (2 * n_max) != 0)
    throw std::invalid_argument("array_convergence: fine_points must be a multiple of twice the largest array");
  if (!(spec.length > 0.0) || !(spec.D > 0.0) || !(spec.duration > 0.0))
    throw std::invalid_argument("array_convergence: length, D and duration must be positive");

  const double kappa = 2.0 * kPi / spec.length;
  const std::size_t fine = spec.fine_points;
  ArrayConvergenceResult r;
  for (int h = 0; h <= spec.halvings; ++h) {
    const std::size_t n = spec.n_min << h;
    const double dx = spec.length / static_cast<double>(n);
    ArrayConfig cfg;
    cfg.n_sites = n;
    cfg.dx_lattice = dx;
    const double J = spec.D / (dx * dx);
    cfg.J = {{1, J}};
    cfg.omega_a = 2.0 * J;
    cfg.omega_b = spec.Omega0;
    if (spec.link)
      cfg.g0_link = spec.g_tilde / (2.0 * std::sqrt(dx));
    else
      cfg.g0_site = spec.g_tilde / std::sqrt(dx);

    const Model coarse = continuum_model(cfg);
    const Model m = Model::single(Grid1D(fine, spec.length / static_cast<double>(fine)), coarse.photons[0].dispersion,
                                  coarse.phonon_dispersion, coarse.interaction.intra[0]);
    FieldState f(m.grid);
    for (std::size_t i = 0; i < fine; ++i) {
      f.a()[i] = smooth_photon(m.grid.x(i), kappa);
      f.b()[i] = smooth_phonon(m.grid.x(i), kappa);
    }
    const double bound = stability_bound(m, f);
    const auto steps = static_cast<std::size_t>(std::ceil(spec.duration / std::min(1e-3 * spec.duration, 0.5 * bound)));
    const double dt = spec.duration / static_cast<double>(steps);

    const double offset = spec.link ? 0.5 : 0.0;
    ArrayState init;
    init.a.resize(n);
    init.b.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      init.a[j] = smooth_photon(j * dx, kappa) * std::sqrt(dx);
      init.b[j] = smooth_phonon((j + offset) * dx, kappa) * std::sqrt(dx);
    }

    Stepper st(m, dt);
    st.set_noise(false);
    for (std::size_t i = 0; i < steps; ++i) st.step(f);
    ArrayRunConfig run;
    run.dt = dt;
    run.steps = steps;
    run.output_every = steps;
    const ArrayState lat = simulate_array(cfg, init, run).final_state;

    const std::size_t stride = fine / n;
    const std::size_t shift = spec.link ? stride / 2 : 0;
    const double s = 1.0 / std::sqrt(dx);
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const Complex ca = f.a()[j * stride], cb = f.b()[j * stride + shift];
      num += std::norm(lat.a[j] * s - ca) + std::norm(lat.b[j] * s - cb);
      den += std::norm(ca) + std::norm(cb);
    }
    r.sites.push_back(n);
    r.dx.push_back(dx);
    r.error.push_back(std::sqrt(num / den));
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = static_cast<double>(r.dx.size());
  for (std::size_t i = 0; i < r.dx.size(); ++i) {
    const double x = std::log(r.dx[i]), y = std::log(r.error[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  r.order = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  return r;
}

}  // namespace cwom
