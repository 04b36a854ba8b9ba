#pragma once

#include <cstdint>
#include <string>

#include "cwom/core/field.hpp"

namespace cwom {

/// Binary field snapshot, little-endian:
///   "CWOM" | u16 version | u64 n_points | f64 dx [m] | n x (f64 Re, f64 Im) of a | same for b
struct Snapshot {
  static constexpr std::uint16_t kVersion = 1;
  std::uint64_t n_points = 0;
  double dx = 0.0;
  ComplexField a, b;
};

/// Writes photon branch `branch` and the phonon field.
void write_snapshot(const std::string& path, const FieldState& state, std::size_t branch = 0);
void write_snapshot(const std::string& path, const Snapshot& snap);
Snapshot read_snapshot(const std::string& path);

}  // namespace cwom
