#include "cwom/scatter/vertex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cwom {

Complex vertex_amplitude(const CouplingSet& c, double k, double q) {
  constexpr Complex i{0.0, 1.0};
  const double kq = k + q;
  Complex v = c.g_ppp + c.g_mmp * kq * k + c.g_mpm * kq * q - std::conj(c.g_mpm) * k * q;
  v += i * q * c.g_ppm + i * (std::conj(c.g_mpp) * k - c.g_mpp * kq) + i * c.g_mmm * kq * k * q;
  return v;
}

Complex forward_amplitude(const CouplingSet& c, double k) { return vertex_amplitude(c, k, 0.0); }

Complex backward_amplitude(const CouplingSet& c, double k) { return vertex_amplitude(c, k, -2.0 * k); }

void BranchSet::validate(double rel_tol) const {
  const std::size_t n = size();
  if (n == 0) throw std::invalid_argument("BranchSet: no branches");
  if (g0_matrix.size() != n * n) throw std::invalid_argument("BranchSet: g0 matrix must be n x n");
  double scale = 0.0;
  for (const Complex& g : g0_matrix) {
    if (!std::isfinite(g.real()) || !std::isfinite(g.imag()))
      throw std::invalid_argument("BranchSet: non-finite coupling");
    scale = std::max(scale, std::abs(g));
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t l = 0; l < n; ++l)
      if (std::abs(g0(j, l) - std::conj(g0(l, j))) > rel_tol * scale)
        throw std::invalid_argument("BranchSet: g0(l, j) must equal conj(g0(j, l)) for branches " +
                                    branches[j].label + ", " + branches[l].label);
}

InteractionModel BranchSet::interaction_model() const {
  validate();
  const std::size_t n = size();
  InteractionModel m;
  m.intra.resize(n);
  for (std::size_t j = 0; j < n; ++j) m.intra[j] = CouplingSet::simple(g0(j, j).real());
  if (n > 1) {
    m.inter = g0_matrix;
    for (std::size_t j = 0; j < n; ++j) m.inter[j * n + j] = 0.0;
  }
  return m;
}

}  // namespace cwom
