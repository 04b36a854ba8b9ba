#include "cwom/core/interaction.hpp"

#include <cmath>
#include <stdexcept>

#include "cwom/core/spectral.hpp"

namespace cwom {
namespace {

constexpr Complex kI{0.0, 1.0};

Carrier operator+(const Carrier& a, const Carrier& b) { return {a.k + b.k, a.omega + b.omega}; }
Carrier operator-(const Carrier& a, const Carrier& b) { return {a.k - b.k, a.omega - b.omega}; }
Carrier operator-(const Carrier& a) { return {-a.k, -a.omega}; }

ComplexField mul(const ComplexField& x, const ComplexField& y) {
  ComplexField r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] * y[i];
  return r;
}

void axpy(ComplexField& acc, Complex c, const ComplexField& x) {
  if (c == Complex{}) return;
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += c * x[i];
}

// acc += coef * env * exp(i(dk x - dw t)), with dk snapped to the grid.
void project_add(ComplexField& acc, Complex coef, const ComplexField& env, const Carrier& residual,
                 const Grid1D& grid, double time) {
  const double dk = static_cast<double>(grid.bin_of(residual.k)) * grid.dk();
  if (dk == 0.0 && residual.omega == 0.0) {
    axpy(acc, coef, env);
    return;
  }
  const double phase_t = -residual.omega * time;
  for (std::size_t i = 0; i < acc.size(); ++i)
    acc[i] += coef * env[i] * std::polar(1.0, dk * grid.x(i) + phase_t);
}

ComplexField deriv(const Wave& w, const Grid1D& grid) {
  return spectral_derivative(w.env, grid, 1, w.carrier.k);
}

bool needs_derivatives(const CouplingSet& c) {
  return c.g_mmp != 0.0 || c.g_mpm != Complex{} || c.g_ppm != 0.0 || c.g_mpp != Complex{} ||
         c.g_mmm != 0.0;
}

// Bracket of the photon equation for one displacement part:
//   g1 A P - g2 d(P dA) - g3 d(A dP) + g3* dA dP + g4 A dP - g5 d(A P) + g5* dA P - g6 d(dA dP)
ComplexField intra_photon_bracket(const CouplingSet& c, const Wave& A, const ComplexField& dA,
                                  const Wave& P, const ComplexField& dP, bool conjugate,
                                  const Grid1D& grid) {
  const Complex g3 = conjugate ? std::conj(c.g_mpm) : c.g_mpm;
  const Complex g5 = conjugate ? std::conj(c.g_mpp) : c.g_mpp;
  const std::size_t n = grid.size();
  ComplexField out(n);
  axpy(out, c.g_ppp, mul(A.env, P.env));
  if (!needs_derivatives(c)) return out;

  ComplexField outer(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] += std::conj(g3) * dA[i] * dP[i] + c.g_ppm * A.env[i] * dP[i] + std::conj(g5) * dA[i] * P.env[i];
    outer[i] = c.g_mmp * P.env[i] * dA[i] + g3 * A.env[i] * dP[i] + g5 * A.env[i] * P.env[i] +
               c.g_mmm * dA[i] * dP[i];
  }
  const ComplexField d_outer = spectral_derivative(outer, grid, 1, A.carrier.k + P.carrier.k);
  for (std::size_t i = 0; i < n; ++i) out[i] -= d_outer[i];
  return out;
}

// Phonon source from branch j with arguments A (photon) and B (conjugate partner):
//   g1 B A + g2 dB dA - d(g3 dB A + g3* B dA) - g4 d(B A) + g5 dB A + g5* B dA - g6 d(dB dA)
ComplexField intra_phonon_bracket(const CouplingSet& c, const Wave& A, const Wave& B,
                                  const Grid1D& grid) {
  const std::size_t n = grid.size();
  ComplexField out(n);
  axpy(out, c.g_ppp, mul(B.env, A.env));
  if (!needs_derivatives(c)) return out;
  const ComplexField dA = deriv(A, grid);
  const ComplexField dB = deriv(B, grid);
  ComplexField outer(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] += c.g_mmp * dB[i] * dA[i] + c.g_mpp * dB[i] * A.env[i] + std::conj(c.g_mpp) * B.env[i] * dA[i];
    outer[i] = c.g_mpm * dB[i] * A.env[i] + std::conj(c.g_mpm) * B.env[i] * dA[i] +
               c.g_ppm * B.env[i] * A.env[i] + c.g_mmm * dB[i] * dA[i];
  }
  const ComplexField d_outer = spectral_derivative(outer, grid, 1, A.carrier.k + B.carrier.k);
  for (std::size_t i = 0; i < n; ++i) out[i] -= d_outer[i];
  return out;
}

// Hamiltonian density of branch j for one displacement part:
//   g1 B A P + g2 dB dA P + g3 dB A dP + g3* dA B dP + g4 B A dP + g5 dB A P + g5* dA B P + g6 dB dA dP
ComplexField intra_density(const CouplingSet& c, const Wave& A, const Wave& B, const Wave& P,
                           const Grid1D& grid) {
  const std::size_t n = grid.size();
  ComplexField out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = c.g_ppp * B.env[i] * A.env[i] * P.env[i];
  if (!needs_derivatives(c)) return out;
  const ComplexField dA = deriv(A, grid);
  const ComplexField dB = deriv(B, grid);
  const ComplexField dP = deriv(P, grid);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] += c.g_mmp * dB[i] * dA[i] * P.env[i] + c.g_mpm * dB[i] * A.env[i] * dP[i] +
              std::conj(c.g_mpm) * dA[i] * B.env[i] * dP[i] + c.g_ppm * B.env[i] * A.env[i] * dP[i] +
              c.g_mpp * dB[i] * A.env[i] * P.env[i] + std::conj(c.g_mpp) * dA[i] * B.env[i] * P.env[i] +
              c.g_mmm * dB[i] * dA[i] * dP[i];
  }
  return out;
}

Wave conj_wave(const Wave& w) {
  Wave r{ComplexField(w.env.size()), -w.carrier};
  for (std::size_t i = 0; i < w.env.size(); ++i) r.env[i] = std::conj(w.env[i]);
  return r;
}

}  // namespace

bool keeps_residual(const Carrier& delta, const InteractionModel& model, const Grid1D& grid) {
  if (std::abs(delta.k) > model.band_fraction * grid.k_max()) return false;
  if (!grid.is_commensurate(delta.k, 1e-6))
    throw std::invalid_argument(
        "interaction: residual carrier wavenumber is not commensurate with the grid; choose carriers on the k-axis");
  if (model.rwa_cutoff && std::abs(delta.omega) > *model.rwa_cutoff) return false;
  return true;
}

PolarizedArgs polarize(const FieldState& s) {
  PolarizedArgs p;
  for (std::size_t j = 0; j < s.branches(); ++j) {
    Wave w{s.photons[j], s.photon_carriers[j]};
    p.abar.push_back(conj_wave(w));
    p.a.push_back(std::move(w));
  }
  p.b = Wave{s.phonon, s.phonon_carrier};
  p.bbar = conj_wave(p.b);
  return p;
}

std::vector<ComplexField> photon_channel(const std::vector<Wave>& photon, const Wave& b,
                                         const Wave& bbar, const std::vector<Carrier>& targets,
                                         const InteractionModel& model, const Grid1D& grid,
                                         double time, bool conjugate) {
  const std::size_t nb = photon.size();
  const Complex prefactor = conjugate ? -kI : kI;
  std::vector<ComplexField> out(nb, ComplexField(grid.size()));
  const Wave* parts[2] = {&b, &bbar};

  std::vector<ComplexField> dphoton(nb);
  ComplexField dpart[2];
  bool any_derivs = false;
  for (const auto& c : model.intra) any_derivs = any_derivs || needs_derivatives(c);
  if (any_derivs) {
    for (std::size_t j = 0; j < nb; ++j) dphoton[j] = deriv(photon[j], grid);
    for (int p = 0; p < 2; ++p) dpart[p] = deriv(*parts[p], grid);
  }

  for (std::size_t j = 0; j < nb; ++j) {
    const Carrier& target = targets[j];
    for (int p = 0; p < 2; ++p) {
      const Wave& P = *parts[p];
      const CouplingSet& c = model.intra[j];
      if (!c.is_zero()) {
        const Carrier residual = photon[j].carrier + P.carrier - target;
        if (keeps_residual(residual, model, grid)) {
          const ComplexField br = intra_photon_bracket(c, photon[j], dphoton[j], P, dpart[p], conjugate, grid);
          project_add(out[j], prefactor, br, residual, grid, time);
        }
      }
      for (std::size_t l = 0; l < nb; ++l) {
        if (l == j) continue;
        Complex g = model.g_inter(j, l);
        if (g == Complex{}) continue;
        if (conjugate) g = std::conj(g);
        const Carrier residual = photon[l].carrier + P.carrier - target;
        if (!keeps_residual(residual, model, grid)) continue;
        project_add(out[j], prefactor * g, mul(photon[l].env, P.env), residual, grid, time);
      }
    }
  }
  return out;
}

ComplexField phonon_source(const std::vector<Wave>& a, const std::vector<Wave>& abar,
                           const Carrier& target, const InteractionModel& model,
                           const Grid1D& grid, double time) {
  const std::size_t nb = a.size();
  ComplexField out(grid.size());
  for (std::size_t j = 0; j < nb; ++j) {
    const CouplingSet& c = model.intra[j];
    if (!c.is_zero()) {
      const Carrier residual = a[j].carrier + abar[j].carrier - target;
      if (keeps_residual(residual, model, grid))
        project_add(out, 1.0, intra_phonon_bracket(c, a[j], abar[j], grid), residual, grid, time);
    }
    for (std::size_t l = 0; l < nb; ++l) {
      if (l == j) continue;
      const Complex g = model.g_inter(j, l);
      if (g == Complex{}) continue;
      const Carrier residual = a[l].carrier + abar[j].carrier - target;
      if (!keeps_residual(residual, model, grid)) continue;
      project_add(out, g, mul(abar[j].env, a[l].env), residual, grid, time);
    }
  }
  return out;
}

FieldDerivatives interaction_rhs(const FieldState& state, const InteractionModel& model) {
  state.validate();
  model.validate();
  if (model.branches() != state.branches())
    throw std::invalid_argument("interaction_rhs: coupling model and state disagree on branch count");
  const PolarizedArgs p = polarize(state);
  FieldDerivatives d;
  d.da = photon_channel(p.a, p.b, p.bbar, state.photon_carriers, model, state.grid, state.time, false);
  d.db = phonon_source(p.a, p.abar, state.phonon_carrier, model, state.grid, state.time);
  for (auto& v : d.db) v *= kI;
  return d;
}

FieldDerivatives interaction_rhs(const FieldState& state, const CouplingSet& couplings) {
  return interaction_rhs(state, InteractionModel::single(couplings));
}

double interaction_integral(const FieldState& state, const InteractionModel& model) {
  const PolarizedArgs p = polarize(state);
  const Grid1D& grid = state.grid;
  const Wave* parts[2] = {&p.b, &p.bbar};
  const Carrier lab{};
  ComplexField acc(grid.size());
  for (std::size_t j = 0; j < p.a.size(); ++j) {
    for (int q = 0; q < 2; ++q) {
      const Wave& P = *parts[q];
      const CouplingSet& c = model.intra[j];
      if (!c.is_zero()) {
        const Carrier residual = p.a[j].carrier + p.abar[j].carrier + P.carrier - lab;
        if (keeps_residual(residual, model, grid))
          project_add(acc, 1.0, intra_density(c, p.a[j], p.abar[j], P, grid), residual, grid, state.time);
      }
      for (std::size_t l = 0; l < p.a.size(); ++l) {
        if (l == j) continue;
        const Complex g = model.g_inter(j, l);
        if (g == Complex{}) continue;
        const Carrier residual = p.a[l].carrier + p.abar[j].carrier + P.carrier;
        if (!keeps_residual(residual, model, grid)) continue;
        ComplexField prod(grid.size());
        for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = p.abar[j].env[i] * p.a[l].env[i] * P.env[i];
        project_add(acc, g, prod, residual, grid, state.time);
      }
    }
  }
  double s = 0.0;
  for (const auto& v : acc) s += v.real();
  return s * grid.dx();
}

}  // namespace cwom
