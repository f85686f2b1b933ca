// Shared test oracles. Everything here stays independent of the library code
// paths it is used to check: direct libm evaluation, brute-force searches,
// plain summation.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "ppstat/numerics.hpp"
#include "ppstat/rng.hpp"

namespace testutil {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Direct libm evaluation of the basis function (oracle for phi/kernels).
inline double phi_direct(int j, double t) {
  if (j == 0) return 1.0;
  if (j > 0) return std::sqrt(2.0) * std::cos(kTwoPi * j * t);
  return std::sqrt(2.0) * std::sin(kTwoPi * (-j) * t);
}

/// Midpoint-rule quadrature; deliberately a different rule from the
/// library's Simpson implementation.
inline double midpoint_quadrature(const std::function<double(double)>& f, int cells) {
  double s = 0.0;
  const double h = 1.0 / cells;
  for (int i = 0; i < cells; ++i) s += f((i + 0.5) * h);
  return s * h;
}

/// Sample moments.
struct Moments {
  double mean = 0.0;
  double var = 0.0;    // unbiased
  double se_mean = 0.0;
  double se_var = 0.0;  // SE of the variance estimate via fourth moment
};

inline Moments moments(const std::vector<double>& v) {
  Moments m;
  const double R = static_cast<double>(v.size());
  for (double x : v) m.mean += x;
  m.mean /= R;
  double m2 = 0.0, m4 = 0.0;
  for (double x : v) {
    const double d = x - m.mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  m.var = m2 / (R - 1.0);
  m4 /= R;
  m.se_mean = std::sqrt(m.var / R);
  const double var_of_var = (m4 - m.var * m.var * (R - 3.0) / (R - 1.0)) / R;
  m.se_var = std::sqrt(std::max(var_of_var, 0.0));
  return m;
}

/// Chi-square goodness-of-fit p-value of observed counts against expected
/// probabilities; bins with expected count < 5 are merged into the tail.
inline double chi_square_gof_pvalue(const std::vector<std::size_t>& observed,
                                    const std::vector<double>& expected_prob,
                                    std::size_t total) {
  std::vector<double> exp_counts;
  std::vector<double> obs_counts;
  double tail_exp = 0.0, tail_obs = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = expected_prob[i] * static_cast<double>(total);
    if (e < 5.0) {
      tail_exp += e;
      tail_obs += static_cast<double>(observed[i]);
    } else {
      exp_counts.push_back(e);
      obs_counts.push_back(static_cast<double>(observed[i]));
    }
  }
  if (tail_exp > 0.0) {
    exp_counts.push_back(tail_exp);
    obs_counts.push_back(tail_obs);
  }
  double stat = 0.0;
  for (std::size_t i = 0; i < exp_counts.size(); ++i) {
    const double d = obs_counts[i] - exp_counts[i];
    stat += d * d / exp_counts[i];
  }
  const double dof = static_cast<double>(exp_counts.size()) - 1.0;
  return ppstat::numerics::chi_square_sf(stat, dof);
}

/// Kolmogorov-Smirnov p-value against Uniform[0,1] (asymptotic).
inline double ks_uniform_pvalue(std::vector<double> samples) {
  std::sort(samples.begin(), samples.end());
  const double m = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = samples[i];
    d = std::max(d, std::fabs((i + 1.0) / m - f));
    d = std::max(d, std::fabs(f - static_cast<double>(i) / m));
  }
  return ppstat::numerics::kolmogorov_q(std::sqrt(m) * d);
}

}  // namespace testutil
