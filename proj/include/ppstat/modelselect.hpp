#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ppstat/estimator.hpp"

namespace ppstat::modelselect {

/// Scale used in the penalty: the empirical betahat_0 (default; the penalty
/// is then a random sequence) or the true beta_0 supplied by the caller.
enum class PenaltyScale { empirical, oracle };

/// Full criterion trace of the penalized-contrast selection.
struct SelectionTrace {
  struct Row {
    int k = 0;
    double contrast = 0.0;
    double penalty = 0.0;
    double criterion() const { return contrast + penalty; }
  };
  int k_hat = 0;
  double pen_scale = 1.0;  // realized (scale beta_0) v 1
  std::vector<Row> rows;
};

/// Contrast of the projection estimate: -sum_{0<=|j|<=k} betahat_j^2
/// (closed form by orthonormality).
double contrast_at(const estimator::EmpiricalCoeffs& emp, int k);

/// 24 (betahat_0 v 1) (2k+1) / n.
double penalty_at(const estimator::EmpiricalCoeffs& emp, int k);
/// Same with an explicit scale (oracle beta_0 path).
double penalty_at(double scale_beta0, std::size_t n, int k);

/// Minimizer of contrast + penalty over k = 0..k_max, smallest k on ties.
SelectionTrace select_dimension(const estimator::EmpiricalCoeffs& emp, int k_max,
                                PenaltyScale scale = PenaltyScale::empirical,
                                double beta0_true = 0.0);

/// Pipeline: empirical coefficients to J = k_max, selection, projection at k_hat.
std::pair<estimator::ProjectionEstimate, SelectionTrace> adaptive_estimate(
    const SampleSet& samples, int k_max,
    PenaltyScale scale = PenaltyScale::empirical, double beta0_true = 0.0);

/// The good event: (beta_0 v 1)/2 <= betahat_0 v 1 <= 2 (beta_0 v 1).
bool xi_indicator(const estimator::EmpiricalCoeffs& emp, double beta0_true);

/// Chernoff exponents controlling the failure probability of the good event:
/// omega1(eta) = 1 - eta + eta log eta, omega2(eta) = 1 - 1/eta - (1/eta) log eta.
struct ChernoffOmegas {
  double omega1 = 0.0;
  double omega2 = 0.0;
};
ChernoffOmegas chernoff_omegas(double eta);

}  // namespace ppstat::modelselect
