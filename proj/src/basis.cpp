#include "ppstat/basis.hpp"

#include <cmath>

#include "ppstat/intensity.hpp"
#include "ppstat/numerics.hpp"

namespace ppstat::basis {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
const double kSqrt2 = std::sqrt(2.0);
}  // namespace

nlohmann::json CoeffVector::to_json() const {
  return nlohmann::json{{"J", J_}, {"values", v_}};
}

CoeffVector CoeffVector::from_json(const nlohmann::json& j) {
  CoeffVector c(j.at("J").get<int>());
  const auto vals = j.at("values").get<std::vector<double>>();
  if (vals.size() != c.size())
    throw std::invalid_argument("CoeffVector: values length must be 2J+1");
  c.v_ = vals;
  return c;
}

double phi(int j, double t) {
  if (j == 0) return 1.0;
  if (j > 0) return kSqrt2 * std::cos(kTwoPi * j * t);
  return kSqrt2 * std::sin(kTwoPi * (-j) * t);
}

double synthesize(const CoeffVector& coeffs, double t) {
  const int J = coeffs.J();
  double acc = coeffs.at(0);
  if (J == 0) return acc;
  const double th = kTwoPi * t;
  const double c1 = std::cos(th);
  const double s1 = std::sin(th);
  double c = 1.0, s = 0.0;
  for (int j = 1; j <= J; ++j) {
    const double cn = c * c1 - s * s1;
    const double sn = s * c1 + c * s1;
    c = cn;
    s = sn;
    acc += kSqrt2 * (coeffs.at(j) * c + coeffs.at(-j) * s);
  }
  return acc;
}

double l2_norm_sq(const CoeffVector& coeffs) {
  double s = 0.0;
  for (double v : coeffs.values()) s += v * v;
  return s;
}

CoeffVector true_coeffs(const IntensityModel& model, int J) {
  CoeffVector out(J);
  if (model.has_exact_coeffs()) {
    for (int j = -J; j <= J; ++j) out.at(j) = model.exact_coeff(j);
    return out;
  }
  // Quadrature path; panel count scales with J to stay Nyquist-safe.
  const int panels = std::max(numerics::kSimpsonPanels, 64 * std::max(J, 1));
  for (int j = -J; j <= J; ++j) {
    out.at(j) = numerics::simpson(
        [&](double t) { return model(t) * phi(j, t); }, 0.0, 1.0, panels);
  }
  return out;
}

GammaSequence GammaSequence::polynomial(double p) {
  if (!(p > 0.0)) throw std::invalid_argument("GammaSequence: p must be > 0");
  return GammaSequence(Family::polynomial, 0.0, p);
}

GammaSequence GammaSequence::analytic(double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("GammaSequence: rho must be > 0");
  return GammaSequence(Family::analytic, rho, 1.0);
}

GammaSequence GammaSequence::generalized(double rho, double p) {
  if (!(rho > 0.0) || !(p > 0.0))
    throw std::invalid_argument("GammaSequence: rho and p must be > 0");
  return GammaSequence(Family::generalized, rho, p);
}

double gamma_value(const GammaSequence& seq, int j) {
  if (j == 0) return 1.0;
  const double a = std::abs(j);
  switch (seq.family()) {
    case GammaSequence::Family::polynomial:
      return std::pow(a, seq.p());
    case GammaSequence::Family::analytic:
      return std::exp(seq.rho() * a);
    case GammaSequence::Family::generalized:
      return std::exp(2.0 * seq.rho() * std::pow(a, seq.p()));
  }
  throw std::logic_error("gamma_value: unreachable");
}

double gamma_norm_sq(const CoeffVector& coeffs, const GammaSequence& seq) {
  double s = 0.0;
  for (int j = -coeffs.J(); j <= coeffs.J(); ++j) {
    const double g = gamma_value(seq, j);
    s += g * g * coeffs.at(j) * coeffs.at(j);
  }
  return s;
}

nlohmann::json GammaSequence::to_json() const {
  switch (family_) {
    case Family::polynomial: return {{"family", "polynomial"}, {"p", p_}};
    case Family::analytic: return {{"family", "analytic"}, {"rho", rho_}};
    case Family::generalized: return {{"family", "generalized"}, {"rho", rho_}, {"p", p_}};
  }
  throw std::logic_error("GammaSequence::to_json: unreachable");
}

GammaSequence GammaSequence::from_json(const nlohmann::json& j) {
  const std::string family = j.at("family").get<std::string>();
  if (family == "polynomial") return polynomial(j.at("p").get<double>());
  if (family == "analytic") return analytic(j.at("rho").get<double>());
  if (family == "generalized")
    return generalized(j.at("rho").get<double>(), j.at("p").get<double>());
  throw std::invalid_argument("GammaSequence: unknown family '" + family + "'");
}

bool SmoothnessClass::contains(const CoeffVector& coeffs, double tol) const {
  return gamma_norm_sq(coeffs, gamma) <= L * L + tol;
}

bool SmoothnessClass::contains(const IntensityModel& model, int J, double tol) const {
  // Model construction already enforces nonnegativity on the check grid.
  double norm = gamma_norm_sq(true_coeffs(model, J), gamma);
  return norm <= L * L + tol;
}

}  // namespace ppstat::basis
