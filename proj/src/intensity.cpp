#include "ppstat/intensity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ppstat {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr int kCheckKnots = 4097;    // nonnegativity grid
constexpr int kCdfKnots = (1 << 12) + 1;
constexpr double kNegTol = -1e-9;

// sum_{j > J} j^{-s}, s > 1: explicit head plus integral remainder.
double power_tail_sum(int J, double s) {
  double sum = 0.0;
  const int head = 2000;
  for (int j = J + 1; j <= J + head; ++j) sum += std::pow(j, -s);
  const double a = J + head + 0.5;
  sum += std::pow(a, 1.0 - s) / (s - 1.0);
  return sum;
}

}  // namespace

IntensityModel IntensityModel::constant(double level, std::string label) {
  if (!(level >= 0.0)) throw std::invalid_argument("constant intensity: level must be >= 0");
  IntensityModel m;
  m.family_ = Family::constant;
  m.label_ = std::move(label);
  m.param_level_ = level;
  m.coeffs_ = basis::CoeffVector(0);
  m.coeffs_.at(0) = level;
  m.finalize();
  return m;
}

IntensityModel IntensityModel::finite_fourier(basis::CoeffVector coeffs, std::string label) {
  IntensityModel m;
  m.family_ = Family::finite_fourier;
  m.label_ = std::move(label);
  m.coeffs_ = std::move(coeffs);
  m.finalize();
  return m;
}

IntensityModel IntensityModel::sobolev_decay(double beta0, double amp, double decay,
                                             std::string label) {
  if (!(decay > 1.0)) throw std::invalid_argument("sobolev_decay: decay must be > 1");
  if (!(beta0 > 0.0) || amp < 0.0) throw std::invalid_argument("sobolev_decay: bad params");
  IntensityModel m;
  m.family_ = Family::sobolev_decay;
  m.label_ = std::move(label);
  m.decay_amp_ = amp;
  m.decay_exponent_ = decay;
  // Truncate synthesis where the sup-norm tail drops below 1e-9.
  int J = 8;
  while (J < 16384 &&
         2.0 * std::sqrt(2.0) * amp * power_tail_sum(J, decay) > 1e-9) {
    J *= 2;
  }
  m.coeffs_ = basis::CoeffVector(J);
  m.coeffs_.at(0) = beta0;
  for (int j = 1; j <= J; ++j) {
    const double b = amp * std::pow(j, -decay);
    m.coeffs_.at(j) = b;
    m.coeffs_.at(-j) = b;
  }
  m.finalize();
  return m;
}

IntensityModel IntensityModel::analytic_decay(double beta0, double amp, double rho,
                                              std::string label) {
  if (!(rho > 0.0)) throw std::invalid_argument("analytic_decay: rho must be > 0");
  if (!(beta0 > 0.0) || amp < 0.0) throw std::invalid_argument("analytic_decay: bad params");
  IntensityModel m;
  m.family_ = Family::analytic_decay;
  m.label_ = std::move(label);
  m.decay_amp_ = amp;
  m.decay_rho_ = rho;
  int J = 4;
  while (J < 16384 &&
         2.0 * std::sqrt(2.0) * amp * std::exp(-rho * (J + 1)) / (1.0 - std::exp(-rho)) > 1e-12) {
    ++J;
  }
  m.coeffs_ = basis::CoeffVector(J);
  m.coeffs_.at(0) = beta0;
  for (int j = 1; j <= J; ++j) {
    const double b = amp * std::exp(-rho * j);
    m.coeffs_.at(j) = b;
    m.coeffs_.at(-j) = b;
  }
  m.finalize();
  return m;
}

IntensityModel IntensityModel::custom_grid(std::vector<double> values, std::string label) {
  if (values.size() < 2) throw std::invalid_argument("custom_grid: need at least 2 knots");
  IntensityModel m;
  m.family_ = Family::custom_grid;
  m.label_ = std::move(label);
  m.grid_values_ = std::move(values);
  m.finalize();
  return m;
}

double IntensityModel::operator()(double t) const {
  double v;
  if (family_ == Family::custom_grid) {
    const std::size_t cells = grid_values_.size() - 1;
    double pos = t * static_cast<double>(cells);
    if (pos < 0.0) pos = 0.0;
    if (pos > static_cast<double>(cells)) pos = static_cast<double>(cells);
    std::size_t i = static_cast<std::size_t>(pos);
    if (i >= cells) i = cells - 1;
    const double frac = pos - static_cast<double>(i);
    v = grid_values_[i] + frac * (grid_values_[i + 1] - grid_values_[i]);
  } else {
    v = basis::synthesize(coeffs_, t);
  }
  if (v < 0.0) {
    if (v < kNegTol) throw std::logic_error("IntensityModel: negative evaluation");
    v = 0.0;
  }
  return v;
}

double IntensityModel::l2_norm_sq() const {
  if (family_ == Family::custom_grid) {
    // Exact for the piecewise-linear interpolant.
    const std::size_t cells = grid_values_.size() - 1;
    const double h = 1.0 / static_cast<double>(cells);
    double s = 0.0;
    for (std::size_t i = 0; i < cells; ++i) {
      const double a = grid_values_[i], b = grid_values_[i + 1];
      s += h * (a * a + a * b + b * b) / 3.0;
    }
    return s;
  }
  return basis::l2_norm_sq(coeffs_) + tail_sq_beyond(coeffs_.J());
}

double IntensityModel::exact_coeff(int j) const {
  switch (family_) {
    case Family::constant:
      return j == 0 ? param_level_ : 0.0;
    case Family::finite_fourier:
      return (j >= -coeffs_.J() && j <= coeffs_.J()) ? coeffs_.at(j) : 0.0;
    case Family::sobolev_decay:
      if (j == 0) return coeffs_.at(0);
      return decay_amp_ * std::pow(std::abs(j), -decay_exponent_);
    case Family::analytic_decay:
      if (j == 0) return coeffs_.at(0);
      return decay_amp_ * std::exp(-decay_rho_ * std::abs(j));
    case Family::custom_grid:
      throw std::logic_error("exact_coeff: custom-grid has no closed-form coefficients");
  }
  throw std::logic_error("exact_coeff: unreachable");
}

double IntensityModel::tail_sq_beyond(int J) const {
  if (J < 0) throw std::invalid_argument("tail_sq_beyond: J must be >= 0");
  switch (family_) {
    case Family::constant:
      return 0.0;
    case Family::finite_fourier:
      if (J >= coeffs_.J()) return 0.0;
      {
        double s = 0.0;
        for (int j = J + 1; j <= coeffs_.J(); ++j)
          s += coeffs_.at(j) * coeffs_.at(j) + coeffs_.at(-j) * coeffs_.at(-j);
        return s;
      }
    case Family::sobolev_decay:
      return 2.0 * decay_amp_ * decay_amp_ * power_tail_sum(J, 2.0 * decay_exponent_);
    case Family::analytic_decay: {
      const double q = std::exp(-2.0 * decay_rho_);
      return 2.0 * decay_amp_ * decay_amp_ * std::pow(q, J + 1) / (1.0 - q);
    }
    case Family::custom_grid:
      throw std::logic_error("tail_sq_beyond: not available for custom-grid");
  }
  throw std::logic_error("tail_sq_beyond: unreachable");
}

void IntensityModel::finalize() {
  // Nonnegativity screen on an equispaced grid.
  double min_v = 0.0, max_v = 0.0;
  for (int i = 0; i < kCheckKnots; ++i) {
    const double t = static_cast<double>(i) / (kCheckKnots - 1);
    double v;
    if (family_ == Family::custom_grid) {
      const std::size_t cells = grid_values_.size() - 1;
      const double pos = t * static_cast<double>(cells);
      std::size_t c = static_cast<std::size_t>(pos);
      if (c >= cells) c = cells - 1;
      const double frac = pos - static_cast<double>(c);
      v = grid_values_[c] + frac * (grid_values_[c + 1] - grid_values_[c]);
    } else {
      v = basis::synthesize(coeffs_, t);
    }
    min_v = std::min(min_v, v);
    max_v = std::max(max_v, v);
  }
  if (min_v < kNegTol) {
    throw std::invalid_argument("IntensityModel: intensity dips below -1e-9 on the check grid");
  }
  if (family_ == Family::custom_grid) {
    for (double v : grid_values_) {
      if (v < kNegTol) throw std::invalid_argument("custom_grid: negative knot value");
      max_v = std::max(max_v, v);
    }
  }
  sup_bound_ = max_v;

  // Total mass.
  if (family_ == Family::custom_grid) {
    const std::size_t cells = grid_values_.size() - 1;
    double s = 0.0;
    for (std::size_t i = 0; i < cells; ++i) s += 0.5 * (grid_values_[i] + grid_values_[i + 1]);
    total_mass_ = s / static_cast<double>(cells);
  } else {
    total_mass_ = coeffs_.at(0);
  }
  if (total_mass_ < 0.0) throw std::invalid_argument("IntensityModel: negative total mass");

  // Normalized CDF at the sampler knots; exact antiderivatives per family.
  if (total_mass_ > 0.0) {
    cdf_.resize(kCdfKnots);
    if (family_ == Family::custom_grid) {
      const std::size_t cells = grid_values_.size() - 1;
      const double hg = 1.0 / static_cast<double>(cells);
      // Cumulative mass of the piecewise-linear density at its own knots.
      std::vector<double> cum(grid_values_.size(), 0.0);
      for (std::size_t i = 0; i < cells; ++i)
        cum[i + 1] = cum[i] + 0.5 * hg * (grid_values_[i] + grid_values_[i + 1]);
      for (int i = 0; i < kCdfKnots; ++i) {
        const double t = static_cast<double>(i) / (kCdfKnots - 1);
        const double pos = t * static_cast<double>(cells);
        std::size_t c = static_cast<std::size_t>(pos);
        if (c >= cells) c = cells - 1;
        const double dt = t - static_cast<double>(c) * hg;
        const double a = grid_values_[c];
        const double slope = (grid_values_[c + 1] - grid_values_[c]) / hg;
        cdf_[i] = cum[c] + a * dt + 0.5 * slope * dt * dt;
      }
    } else {
      const int J = coeffs_.J();
      for (int i = 0; i < kCdfKnots; ++i) {
        const double t = static_cast<double>(i) / (kCdfKnots - 1);
        double F = coeffs_.at(0) * t;
        for (int j = 1; j <= J; ++j) {
          const double w = kTwoPi * j;
          F += coeffs_.at(j) * std::sqrt(2.0) * std::sin(w * t) / w;
          F += coeffs_.at(-j) * std::sqrt(2.0) * (1.0 - std::cos(w * t)) / w;
        }
        cdf_[i] = F;
      }
    }
    const double norm = cdf_.back();
    for (double& f : cdf_) f /= norm;
    cdf_.front() = 0.0;
    cdf_.back() = 1.0;
    // Rounding can leave microscopic non-monotonicity; pin it.
    for (int i = 1; i < kCdfKnots; ++i) cdf_[i] = std::max(cdf_[i], cdf_[i - 1]);
  }
}

double IntensityModel::sample_location(rng::Stream& stream) const {
  if (cdf_.empty()) throw std::logic_error("sample_location: zero-mass model");
  const double u = stream.next_double();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  std::size_t hi = static_cast<std::size_t>(it - cdf_.begin());
  if (hi == 0) hi = 1;
  if (hi >= cdf_.size()) hi = cdf_.size() - 1;
  const std::size_t lo = hi - 1;
  const double span = cdf_[hi] - cdf_[lo];
  const double h = 1.0 / (kCdfKnots - 1);
  const double t0 = static_cast<double>(lo) * h;
  if (span <= 0.0) return t0;
  return t0 + h * (u - cdf_[lo]) / span;
}

nlohmann::json IntensityModel::to_json() const {
  nlohmann::json j;
  j["label"] = label_;
  switch (family_) {
    case Family::constant:
      j["family"] = "constant";
      j["params"] = {{"level", param_level_}};
      break;
    case Family::finite_fourier:
      j["family"] = "finite-fourier";
      j["params"] = {{"coeffs", coeffs_.to_json()}};
      break;
    case Family::sobolev_decay:
      j["family"] = "sobolev-decay";
      j["params"] = {{"beta0", coeffs_.at(0)}, {"amp", decay_amp_}, {"decay", decay_exponent_}};
      break;
    case Family::analytic_decay:
      j["family"] = "analytic-decay";
      j["params"] = {{"beta0", coeffs_.at(0)}, {"amp", decay_amp_}, {"rho", decay_rho_}};
      break;
    case Family::custom_grid:
      j["family"] = "custom-grid";
      j["params"] = {{"values", grid_values_}};
      break;
  }
  return j;
}

IntensityModel IntensityModel::from_json(const nlohmann::json& j) {
  const std::string family = j.at("family").get<std::string>();
  const std::string label = j.value("label", family);
  const auto& p = j.at("params");
  if (family == "constant") return constant(p.at("level").get<double>(), label);
  if (family == "finite-fourier")
    return finite_fourier(basis::CoeffVector::from_json(p.at("coeffs")), label);
  if (family == "sobolev-decay")
    return sobolev_decay(p.at("beta0").get<double>(), p.at("amp").get<double>(),
                         p.at("decay").get<double>(), label);
  if (family == "analytic-decay")
    return analytic_decay(p.at("beta0").get<double>(), p.at("amp").get<double>(),
                          p.at("rho").get<double>(), label);
  if (family == "custom-grid")
    return custom_grid(p.at("values").get<std::vector<double>>(), label);
  throw std::invalid_argument("IntensityModel: unknown family '" + family + "'");
}

}  // namespace ppstat
