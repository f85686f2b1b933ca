#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "ppstat/basis.hpp"
#include "ppstat/rng.hpp"

namespace ppstat {

/// A nonnegative intensity function on [0,1].
///
/// Coefficient-backed families (constant, finite-fourier and the two decay
/// families) carry their Fourier coefficients, so total mass, coefficients
/// and L2 norm are exact; custom-grid models interpolate user-supplied knot
/// values and fall back to quadrature. Construction validates nonnegativity
/// on a 4097-point grid (reject below -1e-9, clamp tiny negatives to 0).
class IntensityModel {
 public:
  enum class Family { constant, finite_fourier, sobolev_decay, analytic_decay, custom_grid };

  static IntensityModel constant(double level, std::string label = "constant");
  static IntensityModel finite_fourier(basis::CoeffVector coeffs,
                                       std::string label = "finite-fourier");
  /// beta_j = beta_{-j} = amp * |j|^-decay, beta_0 given; decay > 1.
  static IntensityModel sobolev_decay(double beta0, double amp, double decay,
                                      std::string label = "sobolev-decay");
  /// beta_j = beta_{-j} = amp * exp(-rho |j|), beta_0 given; rho > 0.
  static IntensityModel analytic_decay(double beta0, double amp, double rho,
                                       std::string label = "analytic-decay");
  /// Piecewise-linear interpolation of values at equispaced knots.
  static IntensityModel custom_grid(std::vector<double> values,
                                    std::string label = "custom-grid");

  Family family() const { return family_; }
  const std::string& label() const { return label_; }

  /// Lambda([0,1]) = beta_0; cached, exact for coefficient families.
  double total_mass() const { return total_mass_; }

  /// lambda(t); clamps values in [-1e-9, 0) to 0.
  double operator()(double t) const;

  /// ||lambda||^2 over [0,1].
  double l2_norm_sq() const;

  /// Upper bound on sup lambda (exact for custom-grid; grid max otherwise).
  double sup_bound() const { return sup_bound_; }

  bool has_exact_coeffs() const { return family_ != Family::custom_grid; }
  /// Coefficient of phi_j; only for coefficient-backed families.
  double exact_coeff(int j) const;
  /// sum_{|j| > J} beta_j^2; analytic for decay families, 0 for finite ones.
  double tail_sq_beyond(int J) const;

  /// One location with density lambda / total_mass, via inverse CDF on a
  /// uniform grid of 2^12+1 knots with linear interpolation.
  double sample_location(rng::Stream& stream) const;

  nlohmann::json to_json() const;
  static IntensityModel from_json(const nlohmann::json& j);

 private:
  IntensityModel() = default;
  void finalize();  // nonnegativity check, CDF grid, caches

  Family family_ = Family::constant;
  std::string label_;
  double total_mass_ = 0.0;
  double sup_bound_ = 0.0;

  // Coefficient families: synthesis coefficients (decay families truncated
  // where the remaining sup-norm tail is < 1e-12).
  basis::CoeffVector coeffs_;
  double decay_amp_ = 0.0, decay_exponent_ = 0.0, decay_rho_ = 0.0;
  double param_level_ = 0.0;

  std::vector<double> grid_values_;  // custom-grid knots

  std::vector<double> cdf_;  // normalized CDF at 2^12+1 knots
};

}  // namespace ppstat
