#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace ppstat {

class IntensityModel;  // intensity.hpp

namespace basis {

/// Coefficients in the trigonometric basis {phi_j}, indexed j = -J..J.
/// phi_0 = 1, phi_j(t) = sqrt(2) cos(2 pi j t), phi_{-j}(t) = sqrt(2) sin(2 pi j t).
class CoeffVector {
 public:
  CoeffVector() = default;
  explicit CoeffVector(int J) : J_(check_J(J)), v_(2 * static_cast<std::size_t>(J) + 1, 0.0) {}

  int J() const { return J_; }
  std::size_t size() const { return v_.size(); }

  double at(int j) const { return v_[index(j)]; }
  double& at(int j) { return v_[index(j)]; }

  const std::vector<double>& values() const { return v_; }

  nlohmann::json to_json() const;
  static CoeffVector from_json(const nlohmann::json& j);

 private:
  static int check_J(int J) {
    if (J < 0) throw std::invalid_argument("CoeffVector: J must be >= 0");
    return J;
  }
  std::size_t index(int j) const {
    if (j < -J_ || j > J_) throw std::out_of_range("CoeffVector: index out of range");
    return static_cast<std::size_t>(j + J_);
  }

  int J_ = 0;
  std::vector<double> v_{0.0};
};

/// Basis function phi_j evaluated at t.
double phi(int j, double t);

/// Truncated series sum_{|j| <= J} c_j phi_j(t).
double synthesize(const CoeffVector& coeffs, double t);

/// Parseval: sum of squared coefficients.
double l2_norm_sq(const CoeffVector& coeffs);

/// Fourier coefficients of the model's intensity up to |j| <= J. Exact
/// readout for coefficient-backed families, quadrature otherwise.
CoeffVector true_coeffs(const IntensityModel& model, int J);

/// Weight sequences gamma for the smoothness classes.
class GammaSequence {
 public:
  enum class Family { polynomial, analytic, generalized };

  static GammaSequence polynomial(double p);
  static GammaSequence analytic(double rho);
  static GammaSequence generalized(double rho, double p);

  Family family() const { return family_; }
  double p() const { return p_; }
  double rho() const { return rho_; }

  nlohmann::json to_json() const;
  static GammaSequence from_json(const nlohmann::json& j);

 private:
  GammaSequence(Family f, double rho, double p) : family_(f), rho_(rho), p_(p) {}
  Family family_ = Family::polynomial;
  double rho_ = 0.0;
  double p_ = 1.0;
};

/// gamma_j; symmetric in j, gamma_0 = 1.
double gamma_value(const GammaSequence& seq, int j);

/// Weighted norm sum_{|j| <= J} gamma_j^2 c_j^2.
double gamma_norm_sq(const CoeffVector& coeffs, const GammaSequence& seq);

/// The class of nonnegative intensities with ||lambda||_gamma <= L.
struct SmoothnessClass {
  GammaSequence gamma;
  double L;

  /// Coefficient-side membership: gamma_norm_sq(coeffs) <= L^2 (+tol).
  bool contains(const CoeffVector& coeffs, double tol = 1e-12) const;
  /// Full membership: coefficient bound plus nonnegativity of the model.
  bool contains(const IntensityModel& model, int J, double tol = 1e-12) const;
};

}  // namespace basis
}  // namespace ppstat
