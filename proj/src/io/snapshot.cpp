#include "cwom/io/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace cwom {
namespace {

template <class U>
void put(std::ofstream& out, U v) {
  unsigned char bytes[sizeof(U)];
  for (std::size_t i = 0; i < sizeof(U); ++i) bytes[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(bytes), sizeof(U));
}

template <class U>
U get(std::ifstream& in) {
  unsigned char bytes[sizeof(U)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(U))) throw std::runtime_error("snapshot: truncated file");
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(bytes[i]) << (8 * i);
  return v;
}

void put_field(std::ofstream& out, const ComplexField& f) {
  for (const Complex& z : f) {
    put(out, std::bit_cast<std::uint64_t>(z.real()));
    put(out, std::bit_cast<std::uint64_t>(z.imag()));
  }
}

ComplexField get_field(std::ifstream& in, std::uint64_t n) {
  ComplexField f(n);
  for (auto& z : f) {
    const double re = std::bit_cast<double>(get<std::uint64_t>(in));
    const double im = std::bit_cast<double>(get<std::uint64_t>(in));
    z = {re, im};
  }
  return f;
}

}  // namespace

void write_snapshot(const std::string& path, const Snapshot& snap) {
  if (snap.a.size() != snap.n_points || snap.b.size() != snap.n_points)
    throw std::invalid_argument("snapshot: field sizes do not match n_points");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out.write("CWOM", 4);
  put(out, Snapshot::kVersion);
  put(out, snap.n_points);
  put(out, std::bit_cast<std::uint64_t>(snap.dx));
  put_field(out, snap.a);
  put_field(out, snap.b);
  if (!out) throw std::runtime_error("snapshot: write failed for '" + path + "'");
}

void write_snapshot(const std::string& path, const FieldState& state, std::size_t branch) {
  write_snapshot(path, Snapshot{state.grid.size(), state.grid.dx(), state.a(branch), state.b()});
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "CWOM", 4) != 0) throw std::runtime_error("snapshot: bad magic");
  const auto version = get<std::uint16_t>(in);
  if (version != Snapshot::kVersion) throw std::runtime_error("snapshot: unsupported version " + std::to_string(version));
  Snapshot s;
  s.n_points = get<std::uint64_t>(in);
  s.dx = std::bit_cast<double>(get<std::uint64_t>(in));
  s.a = get_field(in, s.n_points);
  s.b = get_field(in, s.n_points);
  return s;
}

}  // namespace cwom
