#include "ppstat/pointprocess.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ppstat/numerics.hpp"

namespace ppstat {

double total_mass(const IntensityModel& model) { return model.total_mass(); }

PointPattern sample_pattern(const IntensityModel& model, rng::Stream& stream) {
  PointPattern p;
  const double mass = model.total_mass();
  if (mass <= 0.0) return p;
  const std::uint64_t count = rng::poisson_draw(stream, mass);
  p.points.resize(count);
  for (auto& x : p.points) x = model.sample_location(stream);
  std::sort(p.points.begin(), p.points.end());
  return p;
}

PointPattern sample_pattern_rejection(const IntensityModel& model, rng::Stream& stream) {
  PointPattern p;
  const double mass = model.total_mass();
  if (mass <= 0.0) return p;
  const double sup = model.sup_bound();
  if (!(sup > 0.0)) return p;
  const std::uint64_t count = rng::poisson_draw(stream, mass);
  p.points.resize(count);
  for (auto& x : p.points) {
    for (;;) {
      const double t = stream.next_double();
      if (stream.next_double() * sup <= model(t)) {
        x = t;
        break;
      }
    }
  }
  std::sort(p.points.begin(), p.points.end());
  return p;
}

SampleSet sample_many(const IntensityModel& model, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_many: n must be >= 1");
  SampleSet s;
  s.seed = seed;
  s.model_id = model.label();
  s.patterns.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto stream = rng::Stream::from_key({seed, i});
    s.patterns[i] = sample_pattern(model, stream);
  }
  return s;
}

PointPattern superpose(std::span<const PointPattern> patterns) {
  PointPattern out;
  std::size_t total = 0;
  for (const auto& p : patterns) total += p.count();
  out.points.reserve(total);
  for (const auto& p : patterns)
    out.points.insert(out.points.end(), p.points.begin(), p.points.end());
  std::sort(out.points.begin(), out.points.end());
  return out;
}

double poisson_pmf(std::uint64_t k, double mean) {
  if (!(mean > 0.0)) throw std::invalid_argument("poisson_pmf: mean must be > 0");
  const double kd = static_cast<double>(k);
  return std::exp(-mean + kd * std::log(mean) - std::lgamma(kd + 1.0));
}

double poisson_sf(std::uint64_t k, double mean) {
  if (!(mean > 0.0)) throw std::invalid_argument("poisson_sf: mean must be > 0");
  if (k == 0) return 1.0;
  // P(N >= k) = P(Gamma(k) <= mean).
  return numerics::igamma_p(static_cast<double>(k), mean);
}

}  // namespace ppstat
