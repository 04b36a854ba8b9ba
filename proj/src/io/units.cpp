#include "cwom/io/units.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <stdexcept>

#include "cwom/core/grid.hpp"

namespace cwom {
namespace {

struct Base {
  double scale;
  Dimension dim;
};

const std::map<std::string, Base, std::less<>>& bases() {
  static const std::map<std::string, Base, std::less<>> table{
      {"m", {1.0, Dimension::of(1, 0)}},
      {"s", {1.0, Dimension::of(0, 1)}},
      {"g", {1e-3, Dimension::of(0, 0, 1)}},
      {"K", {1.0, Dimension::of(0, 0, 0, 1)}},
      {"Hz", {1.0, Dimension::of(0, -1)}},
      {"W", {1.0, Dimension::of(2, -3, 1)}},
      {"J", {1.0, Dimension::of(2, -2, 1)}},
      {"rad", {1.0, Dimension::of(0, 0)}},
  };
  return table;
}

const std::map<char, double>& prefixes() {
  static const std::map<char, double> table{{'f', 1e-15}, {'p', 1e-12}, {'n', 1e-9}, {'u', 1e-6},
                                            {'m', 1e-3},  {'c', 1e-2},  {'k', 1e3},  {'M', 1e6},
                                            {'G', 1e9},   {'T', 1e12}};
  return table;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Base symbol(std::string_view name) {
  const auto& b = bases();
  if (auto it = b.find(name); it != b.end()) return it->second;
  if (name.size() > 1) {
    const auto p = prefixes().find(name.front());
    const auto it = b.find(name.substr(1));
    if (p != prefixes().end() && it != b.end() && it->first != "rad")
      return {p->second * it->second.scale, it->second.dim};
  }
  throw std::invalid_argument("unknown unit '" + std::string(name) + "'");
}

// "a" or "a/b" exponent, returned doubled; must be a half-integer.
int exponent_twice(std::string_view e, std::string_view unit) {
  const auto slash = e.find('/');
  auto num = [&](std::string_view t) {
    int v = 0;
    const auto r = std::from_chars(t.data(), t.data() + t.size(), v);
    if (r.ec != std::errc{} || r.ptr != t.data() + t.size())
      throw std::invalid_argument("bad exponent in unit '" + std::string(unit) + "'");
    return v;
  };
  if (slash == std::string_view::npos) return 2 * num(e);
  const int n = num(e.substr(0, slash)), d = num(e.substr(slash + 1));
  if (d == 1) return 2 * n;
  if (d == 2) return n;
  throw std::invalid_argument("exponent must be a multiple of 1/2 in unit '" + std::string(unit) + "'");
}

}  // namespace

Dimension Dimension::of(double m, double s, double kg, double K) {
  Dimension d;
  const double v[4] = {m, s, kg, K};
  for (int i = 0; i < 4; ++i) d.twice[i] = static_cast<int>(std::lround(2.0 * v[i]));
  return d;
}

Dimension Dimension::operator*(const Dimension& o) const {
  Dimension d;
  for (int i = 0; i < 4; ++i) d.twice[i] = twice[i] + o.twice[i];
  return d;
}

Dimension Dimension::inverse() const {
  Dimension d;
  for (int i = 0; i < 4; ++i) d.twice[i] = -twice[i];
  return d;
}

std::string Dimension::canonical() const {
  // Couplings read as "Hz m^n/2".
  const bool hz = twice[1] == -2 && twice[2] == 0 && twice[3] == 0 && twice[0] % 2 != 0;
  static const char* names[4] = {"m", "s", "kg", "K"};
  auto power = [](int t) {
    if (t % 2 != 0) return "^" + std::to_string(t) + "/2";
    return t == 2 ? std::string() : "^" + std::to_string(t / 2);
  };
  std::string num, den;
  if (hz) num = "Hz";
  for (int i = 0; i < 4; ++i) {
    if (hz && i == 1) continue;
    const int t = twice[i];
    if (t > 0) num += (num.empty() ? "" : " ") + std::string(names[i]) + power(t);
    if (t < 0) den += (den.empty() ? "" : " ") + std::string(names[i]) + power(-t);
  }
  if (num.empty() && den.empty()) return "1";
  if (den.empty()) return num;
  if (num.empty()) num = "1";
  return num + "/" + (den.find(' ') == std::string::npos ? den : "(" + den + ")");
}

Dimension dims::coupling(int derivatives) { return Dimension::of(0.5 + derivatives, -1); }

Quantity parse_unit(std::string_view unit) {
  unit = trim(unit);
  Quantity q{1.0, Dimension{}};
  if (unit.empty() || unit == "1") return q;
  bool denominator = false;
  std::size_t i = 0;
  if (unit.rfind("1/", 0) == 0) i = 1;
  while (i < unit.size()) {
    const char c = unit[i];
    if (c == ' ' || c == '*') {
      ++i;
      continue;
    }
    if (c == '/') {
      if (denominator) throw std::invalid_argument("unit '" + std::string(unit) + "' has more than one '/'");
      denominator = true;
      ++i;
      continue;
    }
    if (c == '(' || c == ')') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < unit.size() && std::isalpha(static_cast<unsigned char>(unit[j]))) ++j;
    if (j == i) throw std::invalid_argument("malformed unit '" + std::string(unit) + "'");
    Base b = symbol(unit.substr(i, j - i));
    int e2 = 2;
    if (j < unit.size() && unit[j] == '^') {
      std::size_t k = j + 1;
      while (k < unit.size() && (std::isdigit(static_cast<unsigned char>(unit[k])) || unit[k] == '-' ||
                                 (unit[k] == '/' && k + 1 < unit.size() && std::isdigit(static_cast<unsigned char>(unit[k + 1])))))
        ++k;
      e2 = exponent_twice(unit.substr(j + 1, k - j - 1), unit);
      j = k;
    }
    const double p = (denominator ? -0.5 : 0.5) * e2;
    q.value *= std::pow(b.scale, p);
    for (int t = 0; t < 4; ++t) q.dim.twice[t] += static_cast<int>(std::lround(p * b.dim.twice[t]));
    i = j;
  }
  return q;
}

Quantity parse_quantity(std::string_view text) {
  std::string_view s = trim(text);
  double factor = 1.0;
  if (s.rfind("2pi*", 0) == 0) {
    factor = 2.0 * kPi;
    s = trim(s.substr(4));
  }
  double v = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc{}) throw std::invalid_argument("expected a number in '" + std::string(text) + "'");
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite number in '" + std::string(text) + "'");
  Quantity u = parse_unit(s.substr(static_cast<std::size_t>(r.ptr - s.data())));
  u.value *= v * factor;
  return u;
}

double parse_value(std::string_view text, const Dimension& expected) {
  const Quantity q = parse_quantity(text);
  if (!(q.dim == expected))
    throw std::invalid_argument("'" + std::string(trim(text)) + "' has units of " + q.dim.canonical() +
                                ", expected " + expected.canonical());
  return q.value;
}

}  // namespace cwom
