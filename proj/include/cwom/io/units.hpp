#pragma once

#include <array>
#include <string>
#include <string_view>

namespace cwom {

/// Exponents of (m, s, kg, K), stored in half-integer steps.
struct Dimension {
  std::array<int, 4> twice{0, 0, 0, 0};

  static Dimension of(double m, double s, double kg = 0.0, double K = 0.0);
  bool operator==(const Dimension&) const = default;
  Dimension operator*(const Dimension& o) const;
  Dimension inverse() const;
  /// Canonical SI spelling, e.g. "m/s", "Hz m^1/2", "1".
  std::string canonical() const;
};

namespace dims {
inline const Dimension none = Dimension::of(0, 0);
inline const Dimension length = Dimension::of(1, 0);
inline const Dimension time = Dimension::of(0, 1);
inline const Dimension rate = Dimension::of(0, -1);
inline const Dimension velocity = Dimension::of(1, -1);
inline const Dimension diffusion = Dimension::of(2, -1);
inline const Dimension power = Dimension::of(2, -3, 1);
inline const Dimension temperature = Dimension::of(0, 0, 0, 1);
inline const Dimension wavenumber = Dimension::of(-1, 0);
inline const Dimension flux_amplitude = Dimension::of(0, -0.5);
/// g with n spatial derivatives: Hz m^(1/2 + n).
Dimension coupling(int derivatives);
}  // namespace dims

struct Quantity {
  double value = 0.0;  // SI
  Dimension dim;
};

/// Parses "<number> <unit>", e.g. "6.28e6 /s", "2pi*10 GHz", "3 um", "1.5 mW",
/// "0.7 Hz m^1/2", "4". Hz counts as 1/s; a leading "2pi*" multiplies the
/// number by 2 pi. Throws std::invalid_argument on malformed input.
Quantity parse_quantity(std::string_view text);

/// Unit string alone ("" is dimensionless): SI scale factor and dimension.
Quantity parse_unit(std::string_view unit);

/// parse_quantity, then a dimension check against `expected`.
double parse_value(std::string_view text, const Dimension& expected);

}  // namespace cwom
