#include "cwom/dynamics/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace cwom {

ComplexField sample_noise_field(const Grid1D& grid, double rate, double occupation, double dt,
                                Philox4x32& rng) {
  if (!(occupation >= 0.0)) throw std::invalid_argument("sample_noise_field: occupation must be >= 0");
  if (!(rate >= 0.0)) throw std::invalid_argument("sample_noise_field: rate must be >= 0");
  if (!(dt > 0.0)) throw std::invalid_argument("sample_noise_field: dt must be > 0");
  const double var = (occupation + 0.5) / (grid.dx() * dt);
  const double amp = std::sqrt(rate);
  ComplexNormal normal(rng);
  ComplexField out(grid.size());
  for (auto& v : out) v = amp * normal(var);
  return out;
}

}  // namespace cwom
