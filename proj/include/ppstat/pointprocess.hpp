#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ppstat/intensity.hpp"
#include "ppstat/rng.hpp"

namespace ppstat {

/// One realization: sorted points in [0,1].
struct PointPattern {
  std::vector<double> points;
  std::size_t count() const { return points.size(); }
};

/// n i.i.d. realizations with seed provenance. Regeneration from
/// (model, n, seed) is bit-identical: pattern i always uses the stream
/// keyed by (seed, i).
struct SampleSet {
  std::vector<PointPattern> patterns;
  std::uint64_t seed = 0;
  std::string model_id;
  std::size_t n() const { return patterns.size(); }
};

/// Integral of the intensity over [0,1] (cached beta_0 of the model).
double total_mass(const IntensityModel& model);

/// One realization: Poisson(total_mass) count, then i.i.d. locations with
/// density lambda / total_mass via the model's inverse-CDF grid. Sorted.
PointPattern sample_pattern(const IntensityModel& model, rng::Stream& stream);

/// Rejection-sampling variant for models with a known sup bound
/// (exact for custom-grid models, whose sup is a knot value).
PointPattern sample_pattern_rejection(const IntensityModel& model, rng::Stream& stream);

/// n independent patterns; pattern i drawn from the stream keyed (seed, i).
SampleSet sample_many(const IntensityModel& model, std::size_t n, std::uint64_t seed);

/// Merged sorted union (multiset) of points.
PointPattern superpose(std::span<const PointPattern> patterns);

/// exp(-mean) mean^k / k!, computed in log space.
double poisson_pmf(std::uint64_t k, double mean);

/// Survival P(N >= k) for N ~ Poisson(mean); exact via regularized gamma.
double poisson_sf(std::uint64_t k, double mean);

}  // namespace ppstat
