#pragma once

#include <cstddef>
#include <functional>

namespace ppstat::numerics {

/// Default panel count for intensity integrals (composite Simpson).
inline constexpr int kSimpsonPanels = 1 << 14;

/// Composite Simpson rule with `panels` subintervals of [a,b].
double simpson(const std::function<double(double)>& f, double a, double b,
               int panels = kSimpsonPanels);

/// Regularized lower incomplete gamma P(a,x) = gamma(a,x)/Gamma(a).
double igamma_p(double a, double x);
/// Regularized upper incomplete gamma Q(a,x) = 1 - P(a,x).
double igamma_q(double a, double x);

/// Survival function of the chi-square distribution with `dof` degrees of
/// freedom: P(X >= x).
double chi_square_sf(double x, double dof);

/// Kolmogorov asymptotic tail Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_q(double lambda);

/// Ordinary least squares fit y = intercept + slope * x.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};
LineFit ols_fit(const double* x, const double* y, std::size_t m);

}  // namespace ppstat::numerics
