#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "ppstat/concentration.hpp"
#include "ppstat/config.hpp"
#include "ppstat/estimator.hpp"
#include "ppstat/modelselect.hpp"

namespace ppstat::harness {

struct InvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kToolVersion = "ppstat 0.3.0";

/// Log-log rate fit of median MISE against n. The smallest n is dropped and
/// the line refitted when its residual exceeds twice the largest remaining
/// one (pre-asymptotic bias shows up there first).
struct RateFit {
  std::vector<std::size_t> n_grid;
  std::vector<double> median_mise;
  double slope = 0.0;
  double intercept = 0.0;
  double max_abs_residual = 0.0;
  double theoretical_exponent = 0.0;
  std::vector<std::size_t> dropped_n;

  nlohmann::json to_json() const;
};

RateFit fit_rate(const std::vector<std::size_t>& n_grid,
                 const std::vector<double>& median_mise, double theoretical_exponent);

/// -2p/(2p+1) for polynomial gamma; -1 for the (generalized) analytic
/// families, whose rates carry log factors on top.
double theoretical_exponent(const basis::GammaSequence& gamma);

struct RiskSweepResult {
  RateFit oracle;
  RateFit adaptive;
  // medians index n_grid; per_rep values index (n_index * R + rep)
  std::vector<double> oracle_mise, adaptive_mise;
  std::vector<int> k_hat;
  std::vector<int> k_star_per_n;
  std::vector<double> psi_per_n;
  std::string oracle_csv, adaptive_csv;  // full documents, already written
};

/// Oracle-k* and adaptive estimators on every (n, rep); writes
/// risk_oracle.csv / risk_adaptive.csv with columns (n, rep, k, mise,
/// k_star, psi_n) plus a risk_summary.json of both rate fits.
RiskSweepResult risk_sweep(const ExperimentConfig& config);

struct ConcSweepResult {
  concentration::ConcParams params;
  concentration::TailReport report;
  std::string csv;  // full document, already written
};

/// Tail verification run; writes tail_report.csv and conc_summary.json.
ConcSweepResult conc_sweep(const ExperimentConfig& config);

/// Pure bound table, no RNG; writes bounds.csv.
std::string bounds_table(const ExperimentConfig& config);

/// Dispatch on config.experiment; returns the list of files written.
std::vector<std::string> run(const ExperimentConfig& config);

}  // namespace ppstat::harness
