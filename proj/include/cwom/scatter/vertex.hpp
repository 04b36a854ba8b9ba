#pragma once

#include <string>
#include <vector>

#include "cwom/core/coupling.hpp"
#include "cwom/core/dispersion.hpp"

namespace cwom {

/// Amplitude V(k, q) multiplying a^dag_{k+q} a_k u_q in the interaction
/// density, for both parity sectors:
///
///   even: g_ppp + g_mmp (k+q) k + g_mpm (k+q) q - g_mpm^* k q
///   odd:  i q g_ppm + i [g_mpp^* k - g_mpp (k+q)] + i g_mmm (k+q) k q
///
/// Result in Hz m^1/2 for k, q in rad/m.
Complex vertex_amplitude(const CouplingSet& c, double k, double q);

/// V(k, 0): g_ppp + g_mmp k^2 (+ odd part).
Complex forward_amplitude(const CouplingSet& c, double k);
/// V(k, -2k): g_ppp - g_mmp k^2 + 2 k^2 (g_mpm + g_mpm^*) (+ odd part).
Complex backward_amplitude(const CouplingSet& c, double k);

struct Branch {
  DispersionSpec dispersion;
  std::string label;
};

/// Photon branches with the bare coupling g0(j, l) for scattering l -> j.
struct BranchSet {
  std::vector<Branch> branches;
  std::vector<Complex> g0_matrix;  // row-major n x n, Hz m^1/2

  std::size_t size() const { return branches.size(); }
  Complex g0(std::size_t j, std::size_t l) const { return g0_matrix.at(j * size() + l); }
  /// Throws unless the matrix is n x n, finite and Hermitian.
  void validate(double rel_tol = 1e-12) const;
  /// Diagonal entries become simple intra-branch couplings, the rest the
  /// inter-branch matrix.
  InteractionModel interaction_model() const;
};

}  // namespace cwom
