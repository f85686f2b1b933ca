#pragma once

#include <cstdint>
#include <initializer_list>

namespace ppstat::rng {

/// SplitMix64 (public-domain mixer); used for key hashing and state expansion.
struct SplitMix64 {
  std::uint64_t state = 0;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
};

/// xoshiro256++ stream whose state is derived purely from a tuple of 64-bit
/// keys. (seed, index...) identifies a stream independently of call order or
/// thread schedule, which is what makes parallel replication reproducible.
class Stream {
 public:
  static Stream from_key(std::initializer_list<std::uint64_t> keys);

  std::uint64_t next_u64();
  /// Uniform double in [0,1) with 53 random bits.
  double next_double();
  /// Uniform double in (0,1); never returns exactly 0.
  double next_double_open();
  /// Uniform integer in [0, bound); bound > 0. Uses rejection, unbiased.
  std::uint64_t next_below(std::uint64_t bound);
  /// Standard normal via polar method (test helpers only).
  double next_gaussian();

 private:
  Stream() = default;
  std::uint64_t s_[4] = {1, 2, 3, 4};
};

/// Exact Poisson draw by chunked sequential inversion. Valid for any
/// mean >= 0; chunking keeps exp(-mu) away from underflow while staying
/// distribution-exact (sums of independent Poissons).
std::uint64_t poisson_draw(Stream& stream, double mean);

}  // namespace ppstat::rng
