#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "ppstat/basis.hpp"
#include "ppstat/concentration.hpp"
#include "ppstat/intensity.hpp"

namespace ppstat {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Validated experiment description. One JSON document; CLI flags override
/// seed/threads/out_dir. Unknown keys are rejected.
struct ExperimentConfig {
  std::string experiment;  // simulate, coeffs, estimate, adapt, risk, conc, bounds-table

  std::optional<IntensityModel> model;
  std::optional<basis::GammaSequence> gamma;
  std::optional<concentration::FunctionClass> function_class;

  std::size_t n = 1;
  std::vector<std::size_t> n_grid;
  std::size_t R = 1;
  std::uint64_t seed = 1;
  std::vector<double> x_grid;
  int J = 16;
  int k = -1;      // estimate: fixed dimension; -1 selects the gamma oracle
  int k_max = -1;  // adapt: -1 applies the default policy min(n, 4 ceil(sqrt n) + 64)
  std::string penalty_scale = "empirical";  // or "oracle"
  double beta0_oracle = 0.0;                // scale for penalty_scale == "oracle"
  double c1 = 4.0;
  double c3 = 1.0 / 42.0;
  double eps = 1.0;       // Remark-style bound parameter
  double upsilon = 1.0;   // bounds-table scale
  bool exact_poisson_check = false;
  unsigned threads = 1;
  std::string out_dir = ".";
  std::string kernel = "auto";  // auto, scalar, avx2

  std::uint64_t config_hash = 0;  // fingerprint of the source JSON

  /// Parses and validates. `experiment` from the CLI subcommand; a config
  /// "experiment" field, when present, must agree.
  static ExperimentConfig parse(const nlohmann::json& doc, const std::string& experiment);
  static ExperimentConfig parse_file(const std::string& path, const std::string& experiment);
};

}  // namespace ppstat
