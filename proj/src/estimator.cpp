#include "ppstat/estimator.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ppstat/kernels.hpp"

namespace ppstat::estimator {

namespace {
const double kSqrt2 = std::sqrt(2.0);
}

EmpiricalCoeffs empirical_coeffs(const SampleSet& samples, int J) {
  if (J < 0) throw std::invalid_argument("empirical_coeffs: J must be >= 0");
  if (samples.n() == 0) throw std::invalid_argument("empirical_coeffs: empty sample set");

  // (1/n) sum_i sum_x phi_j(x) only needs the pooled points.
  std::vector<double> pooled;
  std::size_t total = 0;
  for (const auto& p : samples.patterns) total += p.count();
  pooled.reserve(total);
  for (const auto& p : samples.patterns)
    pooled.insert(pooled.end(), p.points.begin(), p.points.end());

  std::vector<double> cos_sums(J + 1), sin_sums(J + 1);
  kernels::fourier_sums(pooled, J, cos_sums.data(), sin_sums.data());

  EmpiricalCoeffs out;
  out.n = samples.n();
  out.coeffs = basis::CoeffVector(J);
  const double inv_n = 1.0 / static_cast<double>(samples.n());
  out.coeffs.at(0) = static_cast<double>(total) * inv_n;
  for (int j = 1; j <= J; ++j) {
    out.coeffs.at(j) = kSqrt2 * cos_sums[j] * inv_n;
    out.coeffs.at(-j) = kSqrt2 * sin_sums[j] * inv_n;
  }
  return out;
}

ProjectionEstimate project(const EmpiricalCoeffs& emp, int k) {
  if (k < 0) throw std::invalid_argument("project: k must be >= 0");
  if (k > emp.coeffs.J()) throw std::out_of_range("project: k exceeds available J");
  ProjectionEstimate est;
  est.k = k;
  est.coeffs = basis::CoeffVector(k);
  for (int j = -k; j <= k; ++j) est.coeffs.at(j) = emp.coeffs.at(j);
  return est;
}

double eval_positive_part(const ProjectionEstimate& est, double t) {
  return std::max(basis::synthesize(est.coeffs, t), 0.0);
}

int default_k_cap(std::size_t n) {
  return 4 * static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n)))) + 64;
}

OracleResult oracle_dimension(const basis::GammaSequence& gamma, std::size_t n, int k_cap) {
  if (n < 1) throw std::invalid_argument("oracle_dimension: n must be >= 1");
  if (k_cap < 1) throw std::invalid_argument("oracle_dimension: k_cap must be >= 1");

  OracleResult best{0, 1.0};
  bool bracketed = false;
  for (int k = 0; k <= k_cap; ++k) {
    const double variance_term = (2.0 * k + 1.0) / static_cast<double>(n);
    if (k > best.k_star && variance_term >= best.psi_n) {
      // Every later k has objective >= variance_term >= current best, and a
      // tie would lose to the earlier minimizer anyway.
      bracketed = true;
      break;
    }
    const double g = basis::gamma_value(gamma, k);
    const double objective = std::max(1.0 / (g * g), variance_term);
    if (k == 0 || objective < best.psi_n) {
      best.k_star = k;
      best.psi_n = objective;
    }
  }
  // Without the break, dimensions beyond k_cap could still improve the
  // objective (the gamma term may keep falling while (2k+1)/n stays small).
  if (!bracketed) {
    throw std::runtime_error("oracle_dimension: k_cap too small to bracket the crossing");
  }
  return best;
}

double mise_exact(const ProjectionEstimate& est, const basis::CoeffVector& truth,
                  double tail_sq) {
  if (truth.J() < est.k) throw std::invalid_argument("mise_exact: truth.J must be >= est.k");
  if (tail_sq < 0.0) throw std::invalid_argument("mise_exact: tail_sq must be >= 0");
  double s = tail_sq;
  for (int j = -est.k; j <= est.k; ++j) {
    const double d = est.coeffs.at(j) - truth.at(j);
    s += d * d;
  }
  for (int j = est.k + 1; j <= truth.J(); ++j) {
    s += truth.at(j) * truth.at(j) + truth.at(-j) * truth.at(-j);
  }
  return s;
}

double sup_ball_stat(const EmpiricalCoeffs& emp, const basis::CoeffVector& truth, int k) {
  if (k > emp.coeffs.J() || k > truth.J())
    throw std::out_of_range("sup_ball_stat: k exceeds available coefficients");
  double s = 0.0;
  for (int j = -k; j <= k; ++j) {
    const double d = emp.coeffs.at(j) - truth.at(j);
    s += d * d;
  }
  return s;
}

}  // namespace ppstat::estimator
