#include "cwom/dynamics/rng.hpp"

#include <cmath>
#include <random>

namespace cwom {
namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

Philox4x32::Philox4x32(std::uint64_t seed, std::uint64_t stream) {
  key_ = {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  ctr_ = {0u, 0u, static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
}

void Philox4x32::seek(std::uint64_t block) {
  ctr_[0] = static_cast<std::uint32_t>(block);
  ctr_[1] = static_cast<std::uint32_t>(block >> 32);
  pos_ = 4;
}

void Philox4x32::refill() {
  std::array<std::uint32_t, 4> c = ctr_;
  std::array<std::uint32_t, 2> k = key_;
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kM0, c[0], hi0, lo0);
    mulhilo(kM1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += kW0;
    k[1] += kW1;
  }
  buf_ = c;
  pos_ = 0;
  if (++ctr_[0] == 0) ++ctr_[1];
}

Philox4x32::result_type Philox4x32::operator()() {
  if (pos_ >= 4) refill();
  return buf_[pos_++];
}

Complex ComplexNormal::operator()(double variance) {
  std::normal_distribution<double> n(0.0, std::sqrt(0.5 * variance));
  const double re = n(rng_);
  const double im = n(rng_);
  return {re, im};
}

}  // namespace cwom
