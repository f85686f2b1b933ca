#pragma once

#include <cstddef>
#include <optional>
#include <span>

namespace ppstat::kernels {

enum class Impl { scalar, avx2 };

const char* impl_name(Impl impl);

/// True if this CPU can run the AVX2 variant (and it was compiled in).
bool avx2_available();

/// Implementation picked by runtime dispatch (override, else best available).
Impl active();

/// Force a specific implementation, or reset to auto with nullopt.
/// Throws std::invalid_argument when forcing an unavailable variant.
void set_override(std::optional<Impl> impl);

/// Trigonometric moment sums over a point set:
///   out_cos[j] = sum_i cos(2*pi*j*x[i]),  out_sin[j] = sum_i sin(2*pi*j*x[i])
/// for j = 0..j_max (so out_cos[0] = x.size(), out_sin[0] = 0).
/// Both output arrays must hold j_max+1 doubles. This is the inner loop of
/// empirical Fourier coefficients and of trig function-class sums.
void fourier_sums(std::span<const double> x, int j_max, double* out_cos,
                  double* out_sin);

/// Reference implementation: per-point angle-addition recurrence, scalar.
void fourier_sums_scalar(std::span<const double> x, int j_max, double* out_cos,
                         double* out_sin);

/// AVX2 variant (4 points per vector, FMA rotation recurrence). Falls back to
/// the scalar kernel when the AVX2 translation unit is not compiled in.
void fourier_sums_avx2(std::span<const double> x, int j_max, double* out_cos,
                       double* out_sin);

}  // namespace ppstat::kernels
