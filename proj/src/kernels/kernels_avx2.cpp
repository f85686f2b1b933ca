// AVX2 + FMA variant of the trigonometric moment kernel. Compiled with
// -mavx2 -mfma; only reached after a runtime cpuid check.

#include <immintrin.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ppstat/kernels.hpp"

namespace ppstat::kernels {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

void fourier_sums_avx2(std::span<const double> x, int j_max, double* out_cos,
                       double* out_sin) {
  if (j_max < 0) throw std::invalid_argument("fourier_sums: j_max must be >= 0");
  const std::size_t m = x.size();
  const std::size_t blocks = m / 4;

  // Per-j vector accumulators, 4 lanes each; folded once at the end so the
  // summation order is fixed and independent of the caller.
  thread_local std::vector<double> acc;
  acc.assign(8 * static_cast<std::size_t>(j_max + 1), 0.0);
  double* acc_c = acc.data();
  double* acc_s = acc.data() + 4 * static_cast<std::size_t>(j_max + 1);

  alignas(32) double c1_lanes[4];
  alignas(32) double s1_lanes[4];

  for (std::size_t b = 0; b < blocks; ++b) {
    const double* xb = x.data() + 4 * b;
    for (int lane = 0; lane < 4; ++lane) {
      const double th = kTwoPi * xb[lane];
      c1_lanes[lane] = std::cos(th);
      s1_lanes[lane] = std::sin(th);
    }
    const __m256d c1 = _mm256_load_pd(c1_lanes);
    const __m256d s1 = _mm256_load_pd(s1_lanes);
    __m256d c = _mm256_set1_pd(1.0);
    __m256d s = _mm256_setzero_pd();
    for (int j = 1; j <= j_max; ++j) {
      // (c,s) <- (c*c1 - s*s1, s*c1 + c*s1)
      const __m256d cn = _mm256_fmsub_pd(c, c1, _mm256_mul_pd(s, s1));
      const __m256d sn = _mm256_fmadd_pd(s, c1, _mm256_mul_pd(c, s1));
      c = cn;
      s = sn;
      double* pc = acc_c + 4 * static_cast<std::size_t>(j);
      double* ps = acc_s + 4 * static_cast<std::size_t>(j);
      _mm256_storeu_pd(pc, _mm256_add_pd(_mm256_loadu_pd(pc), c));
      _mm256_storeu_pd(ps, _mm256_add_pd(_mm256_loadu_pd(ps), s));
    }
  }

  out_cos[0] = static_cast<double>(m);
  out_sin[0] = 0.0;
  for (int j = 1; j <= j_max; ++j) {
    const double* pc = acc_c + 4 * static_cast<std::size_t>(j);
    const double* ps = acc_s + 4 * static_cast<std::size_t>(j);
    out_cos[j] = (pc[0] + pc[1]) + (pc[2] + pc[3]);
    out_sin[j] = (ps[0] + ps[1]) + (ps[2] + ps[3]);
  }

  // Remaining 0..3 points: scalar recurrence.
  for (std::size_t i = 4 * blocks; i < m; ++i) {
    const double th = kTwoPi * x[i];
    const double c1v = std::cos(th);
    const double s1v = std::sin(th);
    double c = 1.0, s = 0.0;
    for (int j = 1; j <= j_max; ++j) {
      const double cn = c * c1v - s * s1v;
      const double sn = s * c1v + c * s1v;
      c = cn;
      s = sn;
      out_cos[j] += c;
      out_sin[j] += s;
    }
  }
}

}  // namespace ppstat::kernels
