#pragma once

#include <array>
#include <cstdint>
#include <limits>

#include "cwom/core/grid.hpp"

namespace cwom {

/// Philox4x32-10 counter-based generator.
///
/// A stream is identified by (seed, stream); the counter advances with each
/// draw, so independent trajectories never share state.
class Philox4x32 {
 public:
  using result_type = std::uint32_t;

  Philox4x32(std::uint64_t seed = 0, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  /// Skip to an absolute block counter.
  void seek(std::uint64_t block);

 private:
  void refill();

  std::array<std::uint32_t, 2> key_{};
  std::array<std::uint32_t, 4> ctr_{};
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;
};

/// Complex Gaussian with E|z|^2 = variance (independent real and imaginary parts).
class ComplexNormal {
 public:
  explicit ComplexNormal(Philox4x32& rng) : rng_(rng) {}
  Complex operator()(double variance);

 private:
  Philox4x32& rng_;
};

}  // namespace cwom
