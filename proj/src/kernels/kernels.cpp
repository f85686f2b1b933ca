#include "ppstat/kernels.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

namespace ppstat::kernels {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::atomic<int> g_override{-1};  // -1 = auto

Impl resolve() {
  const int ov = g_override.load(std::memory_order_relaxed);
  if (ov >= 0) return static_cast<Impl>(ov);
  return avx2_available() ? Impl::avx2 : Impl::scalar;
}

}  // namespace

const char* impl_name(Impl impl) {
  switch (impl) {
    case Impl::scalar: return "scalar";
    case Impl::avx2: return "avx2";
  }
  return "unknown";
}

bool avx2_available() {
#if defined(PPSTAT_HAVE_AVX2_TU) && (defined(__x86_64__) || defined(_M_X64))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Impl active() { return resolve(); }

void set_override(std::optional<Impl> impl) {
  if (!impl) {
    g_override.store(-1, std::memory_order_relaxed);
    return;
  }
  if (*impl == Impl::avx2 && !avx2_available()) {
    throw std::invalid_argument("kernel override: avx2 not available on this CPU");
  }
  g_override.store(static_cast<int>(*impl), std::memory_order_relaxed);
}

void fourier_sums_scalar(std::span<const double> x, int j_max, double* out_cos,
                         double* out_sin) {
  if (j_max < 0) throw std::invalid_argument("fourier_sums: j_max must be >= 0");
  for (int j = 0; j <= j_max; ++j) {
    out_cos[j] = 0.0;
    out_sin[j] = 0.0;
  }
  out_cos[0] = static_cast<double>(x.size());
  for (const double xi : x) {
    const double th = kTwoPi * xi;
    const double c1 = std::cos(th);
    const double s1 = std::sin(th);
    double c = 1.0, s = 0.0;
    for (int j = 1; j <= j_max; ++j) {
      const double cn = c * c1 - s * s1;
      const double sn = s * c1 + c * s1;
      c = cn;
      s = sn;
      out_cos[j] += c;
      out_sin[j] += s;
    }
  }
}

#if !defined(PPSTAT_HAVE_AVX2_TU)
void fourier_sums_avx2(std::span<const double> x, int j_max, double* out_cos,
                       double* out_sin) {
  fourier_sums_scalar(x, j_max, out_cos, out_sin);
}
#endif

void fourier_sums(std::span<const double> x, int j_max, double* out_cos,
                  double* out_sin) {
  if (resolve() == Impl::avx2) {
    fourier_sums_avx2(x, j_max, out_cos, out_sin);
  } else {
    fourier_sums_scalar(x, j_max, out_cos, out_sin);
  }
}

}  // namespace ppstat::kernels
