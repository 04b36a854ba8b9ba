#include "cwom/core/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cwom {

std::string to_string(Sector s) {
  switch (s) {
    case Sector::even: return "even";
    case Sector::odd: return "odd";
    case Sector::mixed: return "mixed";
  }
  return "?";
}

double CouplingSet::rate_scale(double k_max) const {
  const double k = k_max;
  return std::max({std::abs(g_ppp), std::abs(g_mmp) * k * k, std::abs(g_mpm) * k * k,
                   std::abs(g_ppm) * k, std::abs(g_mpp) * k, std::abs(g_mmm) * k * k * k});
}

void CouplingSet::validate() const {
  for (double v : {g_ppp, g_mmp, g_mpm.real(), g_mpm.imag(), g_ppm, g_mpp.real(), g_mpp.imag(), g_mmm})
    if (!std::isfinite(v)) throw std::invalid_argument("CouplingSet: non-finite coupling constant");
  switch (sector) {
    case Sector::even:
      if (has_odd_terms())
        throw std::invalid_argument("CouplingSet: even sector requires g_ppm = g_mpp = g_mmm = 0");
      break;
    case Sector::odd:
      if (has_even_terms())
        throw std::invalid_argument("CouplingSet: odd sector requires g_ppp = g_mmp = g_mpm = 0");
      break;
    case Sector::mixed:
      if (!broken_inversion)
        throw std::invalid_argument(
            "CouplingSet: mixed even/odd couplings require the broken_inversion flag");
      break;
  }
}

void InteractionModel::validate() const {
  if (intra.empty()) throw std::invalid_argument("InteractionModel: at least one photon branch required");
  for (const auto& c : intra) c.validate();
  const std::size_t n = intra.size();
  if (!inter.empty()) {
    if (inter.size() != n * n)
      throw std::invalid_argument("InteractionModel: inter-branch matrix must be n x n");
    for (std::size_t j = 0; j < n; ++j) {
      if (inter[j * n + j] != Complex{})
        throw std::invalid_argument("InteractionModel: inter-branch matrix diagonal must be zero");
      for (std::size_t l = 0; l < n; ++l) {
        const Complex a = inter[j * n + l];
        const Complex b = std::conj(inter[l * n + j]);
        if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a)))
          throw std::invalid_argument("InteractionModel: inter-branch matrix must be Hermitian");
      }
    }
  }
  if (!(band_fraction > 0.0 && band_fraction <= 1.0))
    throw std::invalid_argument("InteractionModel: band_fraction must lie in (0, 1]");
}

}  // namespace cwom
