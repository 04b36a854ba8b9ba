#include "cwom/dynamics/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "cwom/core/spectral.hpp"

namespace cwom {

OpenLayout open_layout(const Model& model) {
  const std::size_t n = model.grid.size();
  const auto absorber = static_cast<std::size_t>(std::ceil(model.boundary.absorber_fraction * static_cast<double>(n)));
  const auto margin = static_cast<std::size_t>(std::ceil(6.0 * model.boundary.source_width_cells));
  OpenLayout l;
  l.absorber_begin = n - absorber;
  l.right_entrance = margin;
  if (l.absorber_begin < 4 * margin + 2) throw std::invalid_argument("open_layout: grid too small for open boundaries");
  l.left_entrance = l.absorber_begin - 1 - margin;
  l.interior_begin = l.right_entrance + margin;
  l.interior_end = l.left_entrance - margin;
  return l;
}

RealField absorber_hump(const Grid1D& grid, double fraction, double peak) {
  const std::size_t n = grid.size();
  const auto width = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n)));
  RealField s(n, 0.0);
  if (width == 0 || peak == 0.0) return s;
  const std::size_t begin = n - width;
  for (std::size_t i = begin; i < n; ++i) {
    const double t = std::sin(kPi * static_cast<double>(i - begin) / static_cast<double>(width));
    s[i] = peak * t * t;
  }
  return s;
}

double resolved_speed(const DispersionSpec& d, const Grid1D& g) {
  double v = 0.0;
  for (double k : g.k_axis())
    if (std::abs(k) <= 0.5 * g.k_max()) v = std::max(v, std::abs(d.group_velocity_at(k)));
  return v;
}

AbsorberProfile make_absorber(const Model& model) {
  AbsorberProfile p;
  const Grid1D& g = model.grid;
  const std::size_t n = g.size();
  if (model.boundary.kind != BoundaryKind::open) {
    p.photons.assign(model.branches(), RealField(n, 0.0));
    p.phonon.assign(n, 0.0);
    return p;
  }
  const double frac = model.boundary.absorber_fraction;
  const double width_m = std::ceil(frac * static_cast<double>(n)) * g.dx();
  auto peak = [&](double v) {
    if (model.boundary.absorber_strength > 0.0) return model.boundary.absorber_strength;
    return 40.0 * std::abs(v) / width_m;
  };
  // fastest resolved mode sets the rate needed to stop everything in the layer
  for (std::size_t j = 0; j < model.branches(); ++j)
    p.photons.push_back(absorber_hump(g, frac, peak(resolved_speed(model.frame_dispersion(j), g))));
  p.phonon = absorber_hump(g, frac, peak(resolved_speed(model.frame_phonon_dispersion(), g)));
  return p;
}

double transport_bound(const Model& model) {
  if (model.boundary.kind != BoundaryKind::open) return std::numeric_limits<double>::infinity();
  double v = resolved_speed(model.frame_phonon_dispersion(), model.grid);
  for (std::size_t j = 0; j < model.branches(); ++j)
    v = std::max(v, resolved_speed(model.frame_dispersion(j), model.grid));
  if (v == 0.0) return std::numeric_limits<double>::infinity();
  return model.grid.dx() / v;
}

std::optional<std::string> resolution_warning(const ComplexField& f, const Grid1D& grid) {
  const ComplexField F = fft(f);
  double total = 0.0, high = 0.0;
  for (std::size_t i = 0; i < F.size(); ++i) {
    const double e = std::norm(F[i]);
    total += e;
    if (std::abs(grid.k(i)) > 0.5 * grid.k_max()) high += e;
  }
  if (total > 0.0 && high > 1e-6 * total) {
    std::ostringstream os;
    os << "absorbing layer: " << high / total
       << " of the field energy lies above half the Nyquist wavenumber; reflection is not controlled";
    return os.str();
  }
  return std::nullopt;
}

FieldState absorbing_layer(const FieldState& state, const AbsorberProfile& profile, double dt,
                           std::vector<std::string>* warnings) {
  FieldState out = state;
  auto damp = [&](ComplexField& f, const RealField& s) {
    if (warnings) {
      if (auto w = resolution_warning(f, state.grid)) warnings->push_back(*w);
    }
    for (std::size_t i = 0; i < f.size(); ++i)
      if (s[i] != 0.0) f[i] *= std::exp(-s[i] * dt);
  };
  for (std::size_t j = 0; j < out.branches(); ++j) damp(out.photons[j], profile.photons.at(j));
  damp(out.phonon, profile.phonon);
  return out;
}

namespace {

std::vector<bool> direction_mask(const DispersionSpec& frame, const Grid1D& g, int dir, bool& all) {
  std::vector<bool> m(g.size());
  all = true;
  for (std::size_t i = 0; i < g.size(); ++i) {
    m[i] = frame.group_velocity_at(g.k(i)) * dir > 0.0;
    all = all && m[i];
  }
  return m;
}

}  // namespace

void check_entrance_dispersion(const Model& model, std::size_t j) {
  const double v = model.photon_velocity(j);
  if (v == 0.0) throw std::invalid_argument("endfire drive: branch has zero group velocity at its carrier");
  const int dir = v > 0 ? 1 : -1;
  const DispersionSpec frame = model.frame_dispersion(j);
  const Grid1D& g = model.grid;
  bool all = false;
  const std::vector<bool> mask = direction_mask(frame, g, dir, all);
  const double w0 = frame(0.0);
  const double tol = 1e-6 * std::abs(v) * 0.5 * g.k_max();
  double worst = 0.0, worst_k = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double k = g.k(i);
    if (!mask[i] || std::abs(k) > 0.5 * g.k_max()) continue;
    const double dev = std::abs(frame(k) - w0 - v * k);
    if (dev > worst) {
      worst = dev;
      worst_k = k;
    }
  }
  if (worst > tol) {
    std::ostringstream os;
    os << "endfire drive on branch '" << model.photons[j].label
       << "': dispersion is not linear near the entrance (deviation " << worst << " rad/s at k = " << worst_k
       << " rad/m, group velocity " << v << " m/s)";
    throw std::invalid_argument(os.str());
  }
}

std::vector<Entrance> build_entrances(const Model& model) {
  std::vector<Entrance> out(model.branches());
  if (model.boundary.kind != BoundaryKind::open) return out;
  const OpenLayout layout = open_layout(model);
  const Grid1D& g = model.grid;
  const double w = model.boundary.source_width_cells;
  for (std::size_t j = 0; j < model.branches(); ++j) {
    Entrance& e = out[j];
    const double v = model.photon_velocity(j);
    if (v == 0.0) continue;
    e.direction = v > 0 ? 1 : -1;
    e.velocity = v;
    e.cell = e.direction > 0 ? layout.right_entrance : layout.left_entrance;
    bool all = false;
    e.mask = direction_mask(model.frame_dispersion(j), g, e.direction, all);
    if (all) e.mask.clear();

    const long n = static_cast<long>(g.size());
    ComplexField s(g.size());
    double area = 0.0;
    for (long i = 0; i < n; ++i) {
      long d = i - static_cast<long>(e.cell);
      if (d > n / 2) d -= n;
      if (d < -n / 2) d += n;
      const double r = static_cast<double>(d) / w;
      s[static_cast<std::size_t>(i)] = std::exp(-0.5 * r * r);
      area += s[static_cast<std::size_t>(i)].real() * g.dx();
    }
    const double amp = v / std::sqrt(std::abs(v)) / area;
    e.source_spectrum = fft(s);
    for (std::size_t i = 0; i < g.size(); ++i) {
      e.source_spectrum[i] *= amp;
      if (!e.mask.empty() && !e.mask[i]) e.source_spectrum[i] = 0.0;
    }
  }
  return out;
}

Complex entrance_amplitude(const Model& model, std::size_t j, double t) {
  Complex a{};
  const double wc = model.photons.at(j).carrier.omega;
  for (const auto& d : model.drives) {
    if (d.mode != DriveMode::endfire || d.branch != j) continue;
    a += d.alpha_in * d.ramp(t) * std::polar(1.0, -(d.omega_L - wc) * t);
  }
  return a;
}

void inject_boundary(FieldState& state, const Model& model, const std::vector<Entrance>& entrances,
                     double dt, Philox4x32& rng) {
  const Grid1D& g = model.grid;
  ComplexNormal normal(rng);
  for (std::size_t j = 0; j < entrances.size(); ++j) {
    const Entrance& e = entrances[j];
    if (e.direction == 0) continue;
    const Complex a_in = normal(0.5 / dt);
    const Complex inc = std::sqrt(std::abs(e.velocity)) * a_in * dt / g.dx();
    if (e.mask.empty()) {
      state.photons[j][e.cell] += inc;
      continue;
    }
    ComplexField spike(g.size());
    spike[e.cell] = inc;
    ComplexField F = fft(spike);
    for (std::size_t i = 0; i < F.size(); ++i)
      if (!e.mask[i]) F[i] = 0.0;
    const ComplexField add = ifft(F);
    for (std::size_t i = 0; i < add.size(); ++i) state.photons[j][i] += add[i];
  }
}

}  // namespace cwom
