#include "cwom/core/hamiltonian.hpp"

#include <stdexcept>

#include "cwom/core/interaction.hpp"
#include "cwom/core/spectral.hpp"

namespace cwom {

double free_energy(const ComplexField& f, const DispersionSpec& dispersion, const Grid1D& grid) {
  const ComplexField F = fft(f);
  const RealField w = dispersion.values_on(grid);
  double s = 0.0;
  for (std::size_t i = 0; i < F.size(); ++i) s += w[i] * std::norm(F[i]);
  return s * grid.dx() / static_cast<double>(grid.size());
}

double hamiltonian(const FieldState& state, const std::vector<DispersionSpec>& photon_dispersions,
                   const DispersionSpec& phonon_dispersion, const InteractionModel& model) {
  if (photon_dispersions.size() != state.branches())
    throw std::invalid_argument("hamiltonian: one dispersion per photon branch required");
  double h = free_energy(state.phonon, phonon_dispersion, state.grid);
  for (std::size_t j = 0; j < state.branches(); ++j)
    h += free_energy(state.photons[j], photon_dispersions[j], state.grid);
  return h - interaction_integral(state, model);
}

}  // namespace cwom
