#include "ppstat/modelselect.hpp"

#include <cmath>
#include <stdexcept>

namespace ppstat::modelselect {

double contrast_at(const estimator::EmpiricalCoeffs& emp, int k) {
  if (k < 0) throw std::invalid_argument("contrast_at: k must be >= 0");
  if (k > emp.coeffs.J()) throw std::out_of_range("contrast_at: k exceeds available J");
  double s = 0.0;
  for (int j = -k; j <= k; ++j) s += emp.coeffs.at(j) * emp.coeffs.at(j);
  return -s;
}

double penalty_at(double scale_beta0, std::size_t n, int k) {
  if (n < 1) throw std::invalid_argument("penalty_at: n must be >= 1");
  if (k < 0) throw std::invalid_argument("penalty_at: k must be >= 0");
  const double scale = std::max(scale_beta0, 1.0);
  return 24.0 * scale * (2.0 * k + 1.0) / static_cast<double>(n);
}

double penalty_at(const estimator::EmpiricalCoeffs& emp, int k) {
  return penalty_at(emp.coeffs.at(0), emp.n, k);
}

SelectionTrace select_dimension(const estimator::EmpiricalCoeffs& emp, int k_max,
                                PenaltyScale scale, double beta0_true) {
  if (k_max < 0) throw std::invalid_argument("select_dimension: k_max must be >= 0");
  if (k_max > emp.coeffs.J())
    throw std::out_of_range("select_dimension: k_max exceeds available J");

  const double raw_scale =
      scale == PenaltyScale::empirical ? emp.coeffs.at(0) : beta0_true;

  SelectionTrace trace;
  trace.pen_scale = std::max(raw_scale, 1.0);
  trace.rows.resize(static_cast<std::size_t>(k_max) + 1);

  double contrast = -emp.coeffs.at(0) * emp.coeffs.at(0);
  double best = 0.0;
  for (int k = 0; k <= k_max; ++k) {
    if (k > 0) {
      contrast -= emp.coeffs.at(k) * emp.coeffs.at(k) +
                  emp.coeffs.at(-k) * emp.coeffs.at(-k);
    }
    auto& row = trace.rows[static_cast<std::size_t>(k)];
    row.k = k;
    row.contrast = contrast;
    row.penalty = penalty_at(raw_scale, emp.n, k);
    if (k == 0 || row.criterion() < best) {
      best = row.criterion();
      trace.k_hat = k;
    }
  }
  return trace;
}

std::pair<estimator::ProjectionEstimate, SelectionTrace> adaptive_estimate(
    const SampleSet& samples, int k_max, PenaltyScale scale, double beta0_true) {
  if (k_max > static_cast<int>(samples.n()))
    throw std::invalid_argument("adaptive_estimate: k_max must be <= n");
  const auto emp = estimator::empirical_coeffs(samples, k_max);
  auto trace = select_dimension(emp, k_max, scale, beta0_true);
  return {estimator::project(emp, trace.k_hat), std::move(trace)};
}

bool xi_indicator(const estimator::EmpiricalCoeffs& emp, double beta0_true) {
  if (!(beta0_true > 0.0)) throw std::invalid_argument("xi_indicator: beta0_true must be > 0");
  const double lhs = std::max(beta0_true, 1.0);
  const double mid = std::max(emp.coeffs.at(0), 1.0);
  return lhs / 2.0 <= mid && mid <= 2.0 * lhs;
}

ChernoffOmegas chernoff_omegas(double eta) {
  if (!(eta > 0.0 && eta < 1.0))
    throw std::invalid_argument("chernoff_omegas: eta must lie in (0,1)");
  ChernoffOmegas w;
  w.omega1 = 1.0 - eta + eta * std::log(eta);
  w.omega2 = 1.0 - 1.0 / eta - std::log(eta) / eta;
  return w;
}

}  // namespace ppstat::modelselect
