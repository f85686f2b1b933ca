#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "ppstat/intensity.hpp"
#include "ppstat/pointprocess.hpp"

namespace ppstat::concentration {

/// One test function [0,1] -> [-1,1].
struct FunctionDescriptor {
  enum class Kind { scaled_trig, constant, step };

  /// amplitude * cos(2 pi j t) for j > 0, amplitude * sin(2 pi |j| t) for
  /// j < 0, amplitude for j == 0. Requires |amplitude| <= 1.
  static FunctionDescriptor scaled_trig(int j, double amplitude);
  static FunctionDescriptor constant(double c);
  /// Piecewise constant: value levels[i] on [breaks[i], breaks[i+1]).
  /// breaks must start at 0, end at 1, strictly increase; |levels| <= 1.
  static FunctionDescriptor step(std::vector<double> breaks, std::vector<double> levels);

  double operator()(double t) const;
  double sup_norm() const;
  std::string name() const;

  nlohmann::json to_json() const;
  static FunctionDescriptor from_json(const nlohmann::json& j);

  Kind kind = Kind::constant;
  int j = 0;
  double amplitude = 0.0;
  std::vector<double> breaks, levels;
};

/// Finite class of test functions (countable classes truncated).
struct FunctionClass {
  explicit FunctionClass(std::vector<FunctionDescriptor> m);  // validates
  std::vector<FunctionDescriptor> members;
  int max_trig_freq() const;
};

/// Centered stochastic integral I(s) = sum_{x in pattern} s(x) - int s dLambda.
double centered_integral(const FunctionDescriptor& s, const PointPattern& pattern,
                         const IntensityModel& model);

/// Compensator int_0^1 s(t) lambda(t) dt (closed form for trig/constant
/// members of coefficient-backed models, quadrature otherwise).
double compensator(const FunctionDescriptor& s, const IntensityModel& model);

/// int_0^1 s(t)^2 lambda(t) dt = var I(s) (Campbell).
double second_moment(const FunctionDescriptor& s, const IntensityModel& model);

/// S_n(s) = I^1(s^1) + ... + I^n(s^n) with per-sample functions and models.
double sn_statistic(std::span<const FunctionDescriptor> s_tuple, const SampleSet& samples,
                    std::span<const IntensityModel> models);
/// i.i.d. special case: same function and model for every sample.
double sn_statistic(const FunctionDescriptor& s, const SampleSet& samples,
                    const IntensityModel& model);

/// V = sup_s var(I(s)) = sup_s int s^2 dLambda.
double wimpy_variance(const FunctionClass& cls, const IntensityModel& model);

/// Monte-Carlo suprema: R replications of Z = sup_s S_n(s) and sup_s |S_n(s)|.
struct ZSamples {
  std::vector<double> z_sup, z_sup_abs;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t R() const { return z_sup.size(); }
};

ZSamples mc_sup_samples(const FunctionClass& cls, const IntensityModel& model,
                        std::size_t n, std::size_t R, std::uint64_t seed,
                        unsigned threads = 1);

/// Scale parameters entering the bounds.
struct ConcParams {
  double EZ_hat = 0.0;       // MC estimate of E Z
  double se_EZ = 0.0;        // its standard error
  double V = 0.0;            // exact wimpy variance (of S_n)
  double upsilon = 0.0;      // 2 EZ_hat + V
  double upsilon_plus = 0.0; // 2 (EZ_hat + 3 se) + V; used in bound evaluation
  double upsilon0 = 0.0;     // sup_s var int s dN = V (Campbell)
  double EZ_abs_hat = 0.0;   // MC mean of sup_s |S_n(s)|
  double se_EZ_abs = 0.0;
};

ConcParams estimate_params(const ZSamples& zs, const FunctionClass& cls,
                           const IntensityModel& model);

// ---- Closed-form bound evaluators -----------------------------------------
//
// Every tail bound is exp(-E) for a nonnegative exponent E; the *_exponent
// functions return E itself. Extreme (x, upsilon) corners drive exp(-E)
// below the smallest double, so ordering and monotonicity checks belong on
// the exponent scale. upsilon = 0 is allowed (degenerate classes); the
// exponents take their limit values.

/// Right log-MGF bound: t EZ + (t/2) upsilon (exp((e^{2t}-1)/2) - 1).
double bound_right_lmgf(double t, double EZ, double upsilon);

/// (x/4) log(1 + 2 log(1 + x/upsilon)).
double bound_right_log_exponent(double x, double upsilon);
/// exp of the negative of the above.
double bound_right_log(double x, double upsilon);

struct TailPair {
  double sharp = 1.0;
  double loose = 1.0;
};
/// Exponents x^2/(upsilon + sqrt(upsilon^2+3 upsilon x) + 3x/2) (sharp) and
/// x^2/(2 upsilon + 3x) (loose); sharp exponent >= loose exponent.
TailPair bound_right_tail_exponent(double x, double upsilon);
/// The probabilities exp(-exponent); sharp <= loose.
TailPair bound_right_tail(double x, double upsilon);

/// Left log-MGF bound: -t EZ + (upsilon/9) (e^{3t} - 3t - 1).
double bound_left_lmgf(double t, double EZ, double upsilon);

/// h(x) = (1+x) log(1+x) - x.
double bennett_h(double x);

struct LeftTail {
  double poisson_form = 1.0;
  double sharp = 1.0;
  double loose = 1.0;
};
/// Exponents (upsilon/9) h(3x/upsilon), x^2/(upsilon + sqrt(upsilon^2+2
/// upsilon x) + x) and x^2/(2 upsilon + 2x), ordered poisson >= sharp >= loose.
LeftTail bound_left_tail_exponent(double x, double upsilon);
LeftTail bound_left_tail(double x, double upsilon);

/// kappa(eps) = 5/4 + 32/eps.
double reynaud_kappa(double eps);
/// x^2/(12 upsilon0 + 2 kappa(eps) x); the probability form bounds
/// P(Z >= (1+eps) EZ + x) for Z = sup |.|.
double bound_reynaud_exponent(double x, double eps, double upsilon0);
double bound_reynaud(double x, double eps, double upsilon0);

/// C(eps) = (sqrt(1+eps) - 1) ^ 1 and c(eps) = 2 (1 + 2 eps).
double integrated_C(double eps);
double integrated_c(double eps);

/// Integrated bound:
///   c1 { (upsilon/n) exp(-(eps/6) n H^2/upsilon)
///        + (M1^2/(C(eps)^2 n^2)) exp(-c3 C(eps) sqrt(eps) n H / M1) }.
double bound_integrated(double eps, double H, double upsilon, double M1,
                        std::size_t n, double c1, double c3);

/// Constants for the unit ball of span{phi_j : |j| <= k}:
///   M1 = sqrt(2k+1), H = sqrt((beta0 v 1)(2k+1)/n),
///   upsilon = sqrt(2k+1) ||lambda|| (beta0 v 1).
struct LemmaEConstants {
  double M1 = 0.0;
  double H = 0.0;
  double upsilon = 0.0;
};
LemmaEConstants lemmaE_constants(int k, double beta0, double lambda_l2_norm,
                                 std::size_t n);

// ---- Monte-Carlo verification ----------------------------------------------

/// Empirical survival fractions against every bound.
struct TailReport {
  std::vector<double> x_grid;
  std::vector<double> emp_right, se_right;  // P(Z >= EZ_hat + x)
  std::vector<double> emp_left, se_left;    // P(Z <= EZ_hat - x)
  std::vector<std::string> bound_names;     // column order
  std::vector<std::vector<double>> bounds;  // bounds[b][x]
  // Remark-style bound for sup|.|, centered at (1+eps) EZ_abs_hat.
  double eps_reynaud = 1.0;
  std::vector<double> emp_abs, se_abs, reynaud_bound;
  std::size_t R = 0;
  std::vector<std::string> flags;  // entries "x=<..> <bound>" where empirical - 3 SE > bound
};

/// pre: R >= 1000. Bounds are evaluated at params.upsilon_plus (callers that
/// know exact parameters set upsilon_plus = upsilon).
TailReport verify_tails(const ZSamples& zs, const ConcParams& params,
                        std::span<const double> x_grid, double eps_reynaud = 1.0);

}  // namespace ppstat::concentration
