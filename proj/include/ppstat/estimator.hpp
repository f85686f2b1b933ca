#pragma once

#include <cstddef>

#include "ppstat/basis.hpp"
#include "ppstat/pointprocess.hpp"

namespace ppstat::estimator {

/// Empirical Fourier coefficients
///   betahat_j = (1/n) sum_i sum_{x in pattern_i} phi_j(x).
struct EmpiricalCoeffs {
  basis::CoeffVector coeffs;
  std::size_t n = 0;
};

EmpiricalCoeffs empirical_coeffs(const SampleSet& samples, int J);

/// Orthogonal-series estimate truncated at dimension k.
struct ProjectionEstimate {
  int k = 0;
  basis::CoeffVector coeffs;  // J == k
};

/// Truncation to |j| <= k. Throws std::out_of_range when k > emp J.
ProjectionEstimate project(const EmpiricalCoeffs& emp, int k);

/// max(estimate(t), 0); the estimate itself can dip negative.
double eval_positive_part(const ProjectionEstimate& est, double t);

/// Bias/variance balancing dimension and its rate.
struct OracleResult {
  int k_star = 0;
  double psi_n = 0.0;  // max{gamma_{k*}^{-2}, (2 k* + 1)/n}
};

/// Exhaustive minimization of max{gamma_k^{-2}, (2k+1)/n} over k = 0..k_cap,
/// smallest k on ties. The (2k+1)/n term is strictly increasing, so the scan
/// stops once it alone exceeds the best objective. Throws std::runtime_error
/// when the minimizer sits at k_cap (range too small to bracket the crossing).
OracleResult oracle_dimension(const basis::GammaSequence& gamma, std::size_t n, int k_cap);

/// Default search cap: 4 ceil(sqrt(n)) + 64.
int default_k_cap(std::size_t n);

/// Exact integrated squared error in coefficient space:
///   sum_{|j|<=k} (betahat_j - beta_j)^2 + sum_{k<|j|<=J} beta_j^2 + tail_sq.
/// tail_sq is the truth's coefficient mass beyond truth.J (0 for finite truths).
double mise_exact(const ProjectionEstimate& est, const basis::CoeffVector& truth,
                  double tail_sq);

/// sup over the unit ball of span{phi_j : |j|<=k} of the squared inner
/// product with the centered empirical process: sum_{|j|<=k} (betahat_j - beta_j)^2.
double sup_ball_stat(const EmpiricalCoeffs& emp, const basis::CoeffVector& truth, int k);

}  // namespace ppstat::estimator
