#include "ppstat/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "ppstat/kernels.hpp"
#include "ppstat/numerics.hpp"
#include "ppstat/parallel.hpp"

namespace ppstat {
namespace concentration {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
const double kSqrt2 = std::sqrt(2.0);
}  // namespace

FunctionDescriptor FunctionDescriptor::scaled_trig(int j, double amplitude) {
  if (std::fabs(amplitude) > 1.0 + 1e-15)
    throw std::invalid_argument("scaled_trig: |amplitude| must be <= 1");
  FunctionDescriptor d;
  d.kind = Kind::scaled_trig;
  d.j = j;
  d.amplitude = amplitude;
  return d;
}

FunctionDescriptor FunctionDescriptor::constant(double c) {
  if (std::fabs(c) > 1.0 + 1e-15)
    throw std::invalid_argument("constant member: |c| must be <= 1");
  FunctionDescriptor d;
  d.kind = Kind::constant;
  d.amplitude = c;
  return d;
}

FunctionDescriptor FunctionDescriptor::step(std::vector<double> breaks,
                                            std::vector<double> levels) {
  if (breaks.size() < 2 || levels.size() + 1 != breaks.size())
    throw std::invalid_argument("step member: need breaks.size() == levels.size()+1");
  if (breaks.front() != 0.0 || breaks.back() != 1.0)
    throw std::invalid_argument("step member: breaks must span [0,1]");
  for (std::size_t i = 1; i < breaks.size(); ++i)
    if (!(breaks[i] > breaks[i - 1]))
      throw std::invalid_argument("step member: breaks must strictly increase");
  for (double v : levels)
    if (std::fabs(v) > 1.0 + 1e-15)
      throw std::invalid_argument("step member: |level| must be <= 1");
  FunctionDescriptor d;
  d.kind = Kind::step;
  d.breaks = std::move(breaks);
  d.levels = std::move(levels);
  return d;
}

double FunctionDescriptor::operator()(double t) const {
  switch (kind) {
    case Kind::scaled_trig:
      if (j == 0) return amplitude;
      if (j > 0) return amplitude * std::cos(kTwoPi * j * t);
      return amplitude * std::sin(kTwoPi * (-j) * t);
    case Kind::constant:
      return amplitude;
    case Kind::step: {
      auto it = std::upper_bound(breaks.begin(), breaks.end(), t);
      std::size_t idx = static_cast<std::size_t>(it - breaks.begin());
      if (idx == 0) idx = 1;
      if (idx > levels.size()) idx = levels.size();
      return levels[idx - 1];
    }
  }
  throw std::logic_error("FunctionDescriptor: unreachable");
}

double FunctionDescriptor::sup_norm() const {
  switch (kind) {
    case Kind::scaled_trig:
    case Kind::constant:
      return std::fabs(amplitude);
    case Kind::step: {
      double m = 0.0;
      for (double v : levels) m = std::max(m, std::fabs(v));
      return m;
    }
  }
  throw std::logic_error("FunctionDescriptor: unreachable");
}

std::string FunctionDescriptor::name() const {
  char buf[96];
  switch (kind) {
    case Kind::scaled_trig:
      if (j > 0)
        std::snprintf(buf, sizeof buf, "%.3g*cos(2pi*%d t)", amplitude, j);
      else if (j < 0)
        std::snprintf(buf, sizeof buf, "%.3g*sin(2pi*%d t)", amplitude, -j);
      else
        std::snprintf(buf, sizeof buf, "const %.3g", amplitude);
      return buf;
    case Kind::constant:
      std::snprintf(buf, sizeof buf, "const %.3g", amplitude);
      return buf;
    case Kind::step:
      std::snprintf(buf, sizeof buf, "step[%zu]", levels.size());
      return buf;
  }
  return "?";
}

nlohmann::json FunctionDescriptor::to_json() const {
  switch (kind) {
    case Kind::scaled_trig:
      return {{"kind", "scaled-trig"}, {"j", j}, {"amplitude", amplitude}};
    case Kind::constant:
      return {{"kind", "constant"}, {"c", amplitude}};
    case Kind::step:
      return {{"kind", "step"}, {"breaks", breaks}, {"levels", levels}};
  }
  throw std::logic_error("FunctionDescriptor::to_json: unreachable");
}

FunctionDescriptor FunctionDescriptor::from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "scaled-trig")
    return scaled_trig(j.at("j").get<int>(), j.at("amplitude").get<double>());
  if (kind == "constant") return constant(j.at("c").get<double>());
  if (kind == "step")
    return step(j.at("breaks").get<std::vector<double>>(),
                j.at("levels").get<std::vector<double>>());
  throw std::invalid_argument("FunctionDescriptor: unknown kind '" + kind + "'");
}

FunctionClass::FunctionClass(std::vector<FunctionDescriptor> m) : members(std::move(m)) {
  if (members.empty()) throw std::invalid_argument("FunctionClass: empty member list");
  constexpr int kGrid = 4097;
  for (const auto& s : members) {
    if (s.sup_norm() > 1.0 + 1e-15)
      throw std::invalid_argument("FunctionClass: member exceeds unit sup-norm");
    for (int i = 0; i < kGrid; ++i) {
      const double t = static_cast<double>(i) / (kGrid - 1);
      if (std::fabs(s(t)) > 1.0 + 1e-12)
        throw std::invalid_argument("FunctionClass: member exceeds [-1,1] on check grid");
    }
  }
}

int FunctionClass::max_trig_freq() const {
  int m = 0;
  for (const auto& s : members)
    if (s.kind == FunctionDescriptor::Kind::scaled_trig) m = std::max(m, std::abs(s.j));
  return m;
}

double compensator(const FunctionDescriptor& s, const IntensityModel& model) {
  if (model.has_exact_coeffs()) {
    switch (s.kind) {
      case FunctionDescriptor::Kind::constant:
        return s.amplitude * model.total_mass();
      case FunctionDescriptor::Kind::scaled_trig:
        if (s.j == 0) return s.amplitude * model.total_mass();
        // cos(2pi j t) = phi_j / sqrt(2), sin(2pi j t) = phi_{-j} / sqrt(2)
        return s.amplitude * model.exact_coeff(s.j) / kSqrt2;
      case FunctionDescriptor::Kind::step: {
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < s.breaks.size(); ++i) {
          acc += s.levels[i] *
                 numerics::simpson([&](double t) { return model(t); }, s.breaks[i],
                                   s.breaks[i + 1], 1 << 10);
        }
        return acc;
      }
    }
  }
  return numerics::simpson([&](double t) { return s(t) * model(t); }, 0.0, 1.0);
}

double second_moment(const FunctionDescriptor& s, const IntensityModel& model) {
  if (model.has_exact_coeffs()) {
    switch (s.kind) {
      case FunctionDescriptor::Kind::constant:
        return s.amplitude * s.amplitude * model.total_mass();
      case FunctionDescriptor::Kind::scaled_trig: {
        if (s.j == 0) return s.amplitude * s.amplitude * model.total_mass();
        // cos^2 = (1 + cos(4pi j t))/2, sin^2 = (1 - cos(4pi j t))/2
        const double b2 = model.exact_coeff(2 * std::abs(s.j)) / kSqrt2;
        const double base = model.total_mass() + (s.j > 0 ? b2 : -b2);
        return 0.5 * s.amplitude * s.amplitude * base;
      }
      case FunctionDescriptor::Kind::step:
        break;  // quadrature below
    }
  }
  return numerics::simpson([&](double t) { return s(t) * s(t) * model(t); }, 0.0, 1.0);
}

double centered_integral(const FunctionDescriptor& s, const PointPattern& pattern,
                         const IntensityModel& model) {
  double acc = 0.0;
  for (double x : pattern.points) acc += s(x);
  return acc - compensator(s, model);
}

double sn_statistic(std::span<const FunctionDescriptor> s_tuple, const SampleSet& samples,
                    std::span<const IntensityModel> models) {
  if (s_tuple.size() != samples.n() || models.size() != samples.n())
    throw std::invalid_argument("sn_statistic: tuple length must equal sample size");
  double acc = 0.0;
  for (std::size_t i = 0; i < samples.n(); ++i)
    acc += centered_integral(s_tuple[i], samples.patterns[i], models[i]);
  return acc;
}

double sn_statistic(const FunctionDescriptor& s, const SampleSet& samples,
                    const IntensityModel& model) {
  double acc = 0.0;
  const double comp = compensator(s, model);
  for (const auto& p : samples.patterns) {
    for (double x : p.points) acc += s(x);
    acc -= comp;
  }
  return acc;
}

double wimpy_variance(const FunctionClass& cls, const IntensityModel& model) {
  double v = 0.0;
  for (const auto& s : cls.members) v = std::max(v, second_moment(s, model));
  return v;
}

namespace {

// Per-member sum over pooled points, kernel-accelerated for trig members.
void member_sums(const FunctionClass& cls, std::span<const double> pooled,
                 const double* cos_sums, const double* sin_sums, double* out) {
  for (std::size_t m = 0; m < cls.members.size(); ++m) {
    const auto& s = cls.members[m];
    double acc = 0.0;
    switch (s.kind) {
      case FunctionDescriptor::Kind::constant:
        acc = s.amplitude * static_cast<double>(pooled.size());
        break;
      case FunctionDescriptor::Kind::scaled_trig:
        if (s.j == 0)
          acc = s.amplitude * static_cast<double>(pooled.size());
        else if (s.j > 0)
          acc = s.amplitude * cos_sums[s.j];
        else
          acc = s.amplitude * sin_sums[-s.j];
        break;
      case FunctionDescriptor::Kind::step:
        for (double x : pooled) acc += s(x);
        break;
    }
    out[m] = acc;
  }
}

}  // namespace

ZSamples mc_sup_samples(const FunctionClass& cls, const IntensityModel& model,
                        std::size_t n, std::size_t R, std::uint64_t seed,
                        unsigned threads) {
  if (R < 1) throw std::invalid_argument("mc_sup_samples: R must be >= 1");
  if (n < 1) throw std::invalid_argument("mc_sup_samples: n must be >= 1");

  const std::size_t m = cls.members.size();
  std::vector<double> comps(m);
  for (std::size_t i = 0; i < m; ++i)
    comps[i] = static_cast<double>(n) * compensator(cls.members[i], model);
  const int j_max = cls.max_trig_freq();

  ZSamples zs;
  zs.n = n;
  zs.seed = seed;
  zs.z_sup.resize(R);
  zs.z_sup_abs.resize(R);

  parallel_for_index(R, threads, [&](std::size_t r) {
    std::vector<double> pooled;
    for (std::size_t i = 0; i < n; ++i) {
      auto stream = rng::Stream::from_key({seed, r, i});
      const auto pat = sample_pattern(model, stream);
      pooled.insert(pooled.end(), pat.points.begin(), pat.points.end());
    }
    std::vector<double> cos_sums(j_max + 1), sin_sums(j_max + 1);
    kernels::fourier_sums(pooled, j_max, cos_sums.data(), sin_sums.data());
    std::vector<double> sums(m);
    member_sums(cls, pooled, cos_sums.data(), sin_sums.data(), sums.data());
    double sup = -std::numeric_limits<double>::infinity();
    double sup_abs = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double sn = sums[i] - comps[i];
      sup = std::max(sup, sn);
      sup_abs = std::max(sup_abs, std::fabs(sn));
    }
    zs.z_sup[r] = sup;
    zs.z_sup_abs[r] = sup_abs;
  });
  return zs;
}

ConcParams estimate_params(const ZSamples& zs, const FunctionClass& cls,
                           const IntensityModel& model) {
  const std::size_t R = zs.R();
  if (R < 2) throw std::invalid_argument("estimate_params: need R >= 2");
  ConcParams p;
  double mean = 0.0, mean_abs = 0.0;
  for (std::size_t r = 0; r < R; ++r) {
    mean += zs.z_sup[r];
    mean_abs += zs.z_sup_abs[r];
  }
  mean /= static_cast<double>(R);
  mean_abs /= static_cast<double>(R);
  double var = 0.0, var_abs = 0.0;
  for (std::size_t r = 0; r < R; ++r) {
    var += (zs.z_sup[r] - mean) * (zs.z_sup[r] - mean);
    var_abs += (zs.z_sup_abs[r] - mean_abs) * (zs.z_sup_abs[r] - mean_abs);
  }
  var /= static_cast<double>(R - 1);
  var_abs /= static_cast<double>(R - 1);

  p.EZ_hat = mean;
  p.se_EZ = std::sqrt(var / static_cast<double>(R));
  p.EZ_abs_hat = mean_abs;
  p.se_EZ_abs = std::sqrt(var_abs / static_cast<double>(R));
  p.V = static_cast<double>(zs.n) * wimpy_variance(cls, model);
  p.upsilon = 2.0 * p.EZ_hat + p.V;
  p.upsilon_plus = 2.0 * (p.EZ_hat + 3.0 * p.se_EZ) + p.V;
  p.upsilon0 = p.V;
  return p;
}

// ---- bounds ----------------------------------------------------------------

double bound_right_lmgf(double t, double EZ, double upsilon) {
  if (t < 0.0) throw std::invalid_argument("bound_right_lmgf: t must be >= 0");
  return t * EZ + 0.5 * t * upsilon * std::expm1(0.5 * std::expm1(2.0 * t));
}

double bound_right_log_exponent(double x, double upsilon) {
  if (x < 0.0 || upsilon < 0.0) throw std::invalid_argument("bound_right_log: domain");
  if (x == 0.0) return 0.0;
  if (upsilon == 0.0) return std::numeric_limits<double>::infinity();
  return 0.25 * x * std::log1p(2.0 * std::log1p(x / upsilon));
}

double bound_right_log(double x, double upsilon) {
  return std::exp(-bound_right_log_exponent(x, upsilon));
}

TailPair bound_right_tail_exponent(double x, double upsilon) {
  if (x < 0.0 || upsilon < 0.0) throw std::invalid_argument("bound_right_tail: domain");
  TailPair out{0.0, 0.0};
  if (x == 0.0) return out;
  const double sharp_den = upsilon + std::sqrt(upsilon * (upsilon + 3.0 * x)) + 1.5 * x;
  out.sharp = x * x / sharp_den;
  out.loose = x * x / (2.0 * upsilon + 3.0 * x);
  return out;
}

TailPair bound_right_tail(double x, double upsilon) {
  const auto e = bound_right_tail_exponent(x, upsilon);
  return {std::exp(-e.sharp), std::exp(-e.loose)};
}

double bound_left_lmgf(double t, double EZ, double upsilon) {
  if (t < 0.0) throw std::invalid_argument("bound_left_lmgf: t must be >= 0");
  return -t * EZ + upsilon / 9.0 * (std::expm1(3.0 * t) - 3.0 * t);
}

double bennett_h(double x) {
  if (x < 0.0) throw std::invalid_argument("bennett_h: x must be >= 0");
  return (1.0 + x) * std::log1p(x) - x;
}

LeftTail bound_left_tail_exponent(double x, double upsilon) {
  if (x < 0.0 || upsilon < 0.0) throw std::invalid_argument("bound_left_tail: domain");
  LeftTail out{0.0, 0.0, 0.0};
  if (x == 0.0) return out;
  out.poisson_form = upsilon == 0.0 ? std::numeric_limits<double>::infinity()
                                    : upsilon / 9.0 * bennett_h(3.0 * x / upsilon);
  const double sharp_den = upsilon + std::sqrt(upsilon * (upsilon + 2.0 * x)) + x;
  out.sharp = x * x / sharp_den;
  out.loose = x * x / (2.0 * upsilon + 2.0 * x);
  return out;
}

LeftTail bound_left_tail(double x, double upsilon) {
  const auto e = bound_left_tail_exponent(x, upsilon);
  return {std::exp(-e.poisson_form), std::exp(-e.sharp), std::exp(-e.loose)};
}

double reynaud_kappa(double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("reynaud_kappa: eps must be > 0");
  return 1.25 + 32.0 / eps;
}

double bound_reynaud_exponent(double x, double eps, double upsilon0) {
  if (x < 0.0 || upsilon0 < 0.0) throw std::invalid_argument("bound_reynaud: domain");
  if (x == 0.0) return 0.0;
  return x * x / (12.0 * upsilon0 + 2.0 * reynaud_kappa(eps) * x);
}

double bound_reynaud(double x, double eps, double upsilon0) {
  return std::exp(-bound_reynaud_exponent(x, eps, upsilon0));
}

double integrated_C(double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("integrated_C: eps must be > 0");
  return std::min(std::sqrt(1.0 + eps) - 1.0, 1.0);
}

double integrated_c(double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("integrated_c: eps must be > 0");
  return 2.0 * (1.0 + 2.0 * eps);
}

double bound_integrated(double eps, double H, double upsilon, double M1,
                        std::size_t n, double c1, double c3) {
  if (!(eps > 0.0 && H > 0.0 && upsilon > 0.0 && M1 > 0.0 && n >= 1 && c1 > 0.0 && c3 > 0.0))
    throw std::invalid_argument("bound_integrated: all arguments must be positive");
  const double nd = static_cast<double>(n);
  const double C = integrated_C(eps);
  const double first = upsilon / nd * std::exp(-(eps / 6.0) * nd * H * H / upsilon);
  const double second = M1 * M1 / (C * C * nd * nd) *
                        std::exp(-c3 * C * std::sqrt(eps) * nd * H / M1);
  return c1 * (first + second);
}

LemmaEConstants lemmaE_constants(int k, double beta0, double lambda_l2_norm,
                                 std::size_t n) {
  if (k < 0 || !(beta0 > 0.0) || !(lambda_l2_norm > 0.0) || n < 1)
    throw std::invalid_argument("lemmaE_constants: bad arguments");
  LemmaEConstants c;
  const double dim = 2.0 * k + 1.0;
  const double b = std::max(beta0, 1.0);
  c.M1 = std::sqrt(dim);
  c.H = std::sqrt(b * dim / static_cast<double>(n));
  c.upsilon = std::sqrt(dim) * lambda_l2_norm * b;
  return c;
}

TailReport verify_tails(const ZSamples& zs, const ConcParams& params,
                        std::span<const double> x_grid, double eps_reynaud) {
  const std::size_t R = zs.R();
  if (R < 1000) throw std::invalid_argument("verify_tails: need R >= 1000");

  TailReport rep;
  rep.R = R;
  rep.eps_reynaud = eps_reynaud;
  rep.x_grid.assign(x_grid.begin(), x_grid.end());
  rep.bound_names = {"right_log", "right_sharp", "right_loose",
                     "left_poisson", "left_sharp", "left_loose"};
  rep.bounds.assign(rep.bound_names.size(), std::vector<double>(x_grid.size()));

  const double u = params.upsilon_plus > 0.0 ? params.upsilon_plus : params.upsilon;
  const double abs_center = (1.0 + eps_reynaud) * params.EZ_abs_hat;

  auto se_of = [R](double p) {
    return std::sqrt(p * (1.0 - p) / static_cast<double>(R));
  };

  char flag_buf[128];
  for (std::size_t xi = 0; xi < x_grid.size(); ++xi) {
    const double x = x_grid[xi];
    if (x < 0.0) throw std::invalid_argument("verify_tails: x grid must be nonnegative");
    std::size_t right = 0, left = 0, abs_exceed = 0;
    for (std::size_t r = 0; r < R; ++r) {
      if (zs.z_sup[r] >= params.EZ_hat + x) ++right;
      if (zs.z_sup[r] <= params.EZ_hat - x) ++left;
      if (zs.z_sup_abs[r] >= abs_center + x) ++abs_exceed;
    }
    const double pr = static_cast<double>(right) / static_cast<double>(R);
    const double pl = static_cast<double>(left) / static_cast<double>(R);
    const double pa = static_cast<double>(abs_exceed) / static_cast<double>(R);
    rep.emp_right.push_back(pr);
    rep.se_right.push_back(se_of(pr));
    rep.emp_left.push_back(pl);
    rep.se_left.push_back(se_of(pl));
    rep.emp_abs.push_back(pa);
    rep.se_abs.push_back(se_of(pa));

    const auto rt = bound_right_tail(x, u);
    const auto lt = bound_left_tail(x, u);
    rep.bounds[0][xi] = bound_right_log(x, u);
    rep.bounds[1][xi] = rt.sharp;
    rep.bounds[2][xi] = rt.loose;
    rep.bounds[3][xi] = lt.poisson_form;
    rep.bounds[4][xi] = lt.sharp;
    rep.bounds[5][xi] = lt.loose;
    rep.reynaud_bound.push_back(bound_reynaud(x, eps_reynaud, params.upsilon0));

    for (std::size_t b = 0; b < rep.bound_names.size(); ++b) {
      const bool is_right = b < 3;
      const double emp = is_right ? pr : pl;
      const double se = is_right ? rep.se_right.back() : rep.se_left.back();
      if (emp - 3.0 * se > rep.bounds[b][xi]) {
        std::snprintf(flag_buf, sizeof flag_buf, "x=%g %s", x, rep.bound_names[b].c_str());
        rep.flags.emplace_back(flag_buf);
      }
    }
    if (pa - 3.0 * rep.se_abs.back() > rep.reynaud_bound.back()) {
      std::snprintf(flag_buf, sizeof flag_buf, "x=%g reynaud", x);
      rep.flags.emplace_back(flag_buf);
    }
  }
  return rep;
}

}  // namespace concentration
}  // namespace ppstat
