#include "ppstat/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace ppstat::rng {

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Stream Stream::from_key(std::initializer_list<std::uint64_t> keys) {
  // Hash chain over the key tuple, then expand with SplitMix64. The chain
  // constant makes ({a}, b) and ({a, b}) distinct.
  std::uint64_t h = 0x243f6a8885a308d3ULL;
  for (std::uint64_t k : keys) {
    h = mix64(h ^ k) + 0x9e3779b97f4a7c15ULL;
  }
  SplitMix64 sm{h};
  Stream out;
  for (auto& w : out.s_) w = sm.next();
  if ((out.s_[0] | out.s_[1] | out.s_[2] | out.s_[3]) == 0) out.s_[0] = 1;
  return out;
}

std::uint64_t Stream::next_u64() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Stream::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Stream::next_double_open() {
  double u;
  do {
    u = next_double();
  } while (u == 0.0);
  return u;
}

std::uint64_t Stream::next_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("next_below: bound must be > 0");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return x % bound;
}

double Stream::next_gaussian() {
  // Marsaglia polar method.
  for (;;) {
    const double u = 2.0 * next_double() - 1.0;
    const double v = 2.0 * next_double() - 1.0;
    const double r2 = u * u + v * v;
    if (r2 > 0.0 && r2 < 1.0) {
      return u * std::sqrt(-2.0 * std::log(r2) / r2);
    }
  }
}

namespace {

// Sequential inversion; requires mean small enough that exp(-mean) is far
// from underflow (callers chunk at 30).
std::uint64_t poisson_inversion(Stream& stream, double mean) {
  const double u = stream.next_double();
  double p = std::exp(-mean);
  double c = p;
  std::uint64_t k = 0;
  // c approaches 1; the guard covers the (astronomically unlikely) case where
  // accumulated rounding stalls the loop.
  const std::uint64_t k_guard =
      static_cast<std::uint64_t>(mean + 40.0 * std::sqrt(mean) + 128.0);
  while (u > c && k < k_guard) {
    ++k;
    p *= mean / static_cast<double>(k);
    c += p;
  }
  return k;
}

}  // namespace

std::uint64_t poisson_draw(Stream& stream, double mean) {
  if (!(mean >= 0.0)) throw std::invalid_argument("poisson_draw: mean must be >= 0");
  std::uint64_t total = 0;
  constexpr double kChunk = 30.0;
  while (mean > kChunk) {
    total += poisson_inversion(stream, kChunk);
    mean -= kChunk;
  }
  if (mean > 0.0) total += poisson_inversion(stream, mean);
  return total;
}

}  // namespace ppstat::rng
