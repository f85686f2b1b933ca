#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "ppstat/estimator.hpp"
#include "ppstat/intensity.hpp"
#include "ppstat/numerics.hpp"
#include "testutil.hpp"

using namespace ppstat;
using namespace ppstat::estimator;

namespace {

SampleSet single_pattern(std::vector<double> points) {
  SampleSet s;
  s.patterns.push_back(PointPattern{std::move(points)});
  return s;
}

// Exhaustive oracle for the dimension search, structured independently of the
// library's early-exit scan.
std::pair<int, double> brute_oracle(const basis::GammaSequence& g, std::size_t n, int k_hi) {
  int best_k = 0;
  double best = std::max(1.0, 1.0 / static_cast<double>(n));
  for (int k = 0; k <= k_hi; ++k) {
    const double gv = basis::gamma_value(g, k);
    const double obj = std::max(1.0 / (gv * gv), (2.0 * k + 1.0) / static_cast<double>(n));
    if (obj < best) {
      best = obj;
      best_k = k;
    }
  }
  return {best_k, best};
}

}  // namespace

TEST_CASE("empirical coefficients of a single point") {
  const auto emp = empirical_coeffs(single_pattern({0.25}), 1);
  CHECK(emp.coeffs.at(0) == 1.0);
  CHECK(std::fabs(emp.coeffs.at(1) - std::sqrt(2.0) * std::cos(testutil::kTwoPi * 0.25)) < 1e-12);
  CHECK(std::fabs(emp.coeffs.at(1)) < 1e-12);
  CHECK(emp.coeffs.at(-1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("empirical coefficients vanish on empty patterns") {
  SampleSet s;
  s.patterns.resize(4);
  const auto emp = empirical_coeffs(s, 3);
  for (int j = -3; j <= 3; ++j) CHECK(emp.coeffs.at(j) == 0.0);
}

TEST_CASE("empirical coefficients match a direct per-point summation") {
  const auto m = IntensityModel::sobolev_decay(8.0, 2.9, 3.5);
  const auto s = sample_many(m, 20, 99);
  const int J = 12;
  const auto emp = empirical_coeffs(s, J);
  for (int j = -J; j <= J; ++j) {
    double acc = 0.0;
    for (const auto& p : s.patterns)
      for (double x : p.points) acc += testutil::phi_direct(j, x);
    acc /= static_cast<double>(s.n());
    CHECK(emp.coeffs.at(j) == doctest::Approx(acc).epsilon(1e-10));
  }
}

TEST_CASE("betahat_0 concentrates at the total mass (Campbell variance scale)") {
  const auto m = IntensityModel::constant(2.0);
  const std::size_t n = 10000;
  const auto emp = empirical_coeffs(sample_many(m, n, 31), 0);
  CHECK(std::fabs(emp.coeffs.at(0) - 2.0) <= 3.0 * std::sqrt(2.0 / n));
}

TEST_CASE("unbiasedness across models and frequencies (4 SE, Campbell variance)") {
  std::vector<IntensityModel> models;
  models.push_back(IntensityModel::constant(2.0));
  basis::CoeffVector ff(2);
  ff.at(0) = 3.0;
  ff.at(1) = 0.5;
  ff.at(-2) = 0.8;
  models.push_back(IntensityModel::finite_fourier(std::move(ff)));
  models.push_back(IntensityModel::sobolev_decay(2.0, 0.7, 3.5));

  const std::size_t R = 10000, n = 5;
  const int J = 8;
  for (std::size_t mi = 0; mi < models.size(); ++mi) {
    const auto& model = models[mi];
    std::vector<std::vector<double>> draws(2 * J + 1, std::vector<double>(R));
    for (std::size_t r = 0; r < R; ++r) {
      const std::uint64_t seed = rng::Stream::from_key({404, mi, r}).next_u64();
      const auto emp = empirical_coeffs(sample_many(model, n, seed), J);
      for (int j = -J; j <= J; ++j) draws[j + J][r] = emp.coeffs.at(j);
    }
    const auto truth = basis::true_coeffs(model, J);
    for (int j = -J; j <= J; ++j) {
      const auto mo = testutil::moments(draws[j + J]);
      // Campbell: var(betahat_j) = int phi_j^2 dLambda / n
      const double var_truth = numerics::simpson(
          [&](double t) { return basis::phi(j, t) * basis::phi(j, t) * model(t); },
          0.0, 1.0) / static_cast<double>(n);
      const double se = std::sqrt(var_truth / R);
      CHECK(std::fabs(mo.mean - truth.at(j)) <= 4.0 * se);
      CHECK(std::fabs(mo.var - var_truth) <= 4.0 * mo.se_var);
    }
  }
}

TEST_CASE("projection: truncation, identity, idempotence, range error") {
  const auto m = IntensityModel::sobolev_decay(8.0, 2.9, 3.5);
  const auto emp = empirical_coeffs(sample_many(m, 10, 3), 6);

  const auto p0 = project(emp, 0);
  CHECK(p0.coeffs.J() == 0);
  CHECK(p0.coeffs.at(0) == emp.coeffs.at(0));

  const auto p6 = project(emp, 6);
  for (int j = -6; j <= 6; ++j) CHECK(p6.coeffs.at(j) == emp.coeffs.at(j));

  const auto p5 = project(emp, 5);
  EmpiricalCoeffs as_emp{p5.coeffs, emp.n};
  const auto p3a = project(as_emp, 3);
  const auto p3b = project(emp, 3);
  for (int j = -3; j <= 3; ++j) CHECK(p3a.coeffs.at(j) == p3b.coeffs.at(j));

  CHECK_THROWS_AS(project(emp, 7), std::out_of_range);
}

TEST_CASE("positive part clamps negative estimates and never raises risk") {
  ProjectionEstimate neg{0, basis::CoeffVector(0)};
  neg.coeffs.at(0) = -1.0;
  for (double t : {0.0, 0.5, 1.0}) CHECK(eval_positive_part(neg, t) == 0.0);

  ProjectionEstimate pos{0, basis::CoeffVector(0)};
  pos.coeffs.at(0) = 2.0;
  for (double t : {0.0, 0.5, 1.0}) CHECK(eval_positive_part(pos, t) == 2.0);

  // int (max(est,0) - lambda)^2 <= int (est - lambda)^2 on random instances
  const auto m = IntensityModel::constant(0.4);
  auto stream = rng::Stream::from_key({88});
  for (int rep = 0; rep < 5; ++rep) {
    ProjectionEstimate est{2, basis::CoeffVector(2)};
    for (int j = -2; j <= 2; ++j) est.coeffs.at(j) = 1.2 * stream.next_double() - 0.6;
    const double risk_raw = numerics::simpson(
        [&](double t) {
          const double d = basis::synthesize(est.coeffs, t) - m(t);
          return d * d;
        },
        0.0, 1.0);
    const double risk_pos = numerics::simpson(
        [&](double t) {
          const double d = eval_positive_part(est, t) - m(t);
          return d * d;
        },
        0.0, 1.0);
    CHECK(risk_pos <= risk_raw + 1e-12);
  }
}

TEST_CASE("oracle dimension: polynomial p=2 at n=1000 gives k*=4, psi=0.009") {
  const auto g = basis::GammaSequence::polynomial(2.0);
  const auto r = oracle_dimension(g, 1000, 100);
  CHECK(r.k_star == 4);
  CHECK(r.psi_n == doctest::Approx(0.009).epsilon(1e-15));
  const auto brute = brute_oracle(g, 1000, 100);
  CHECK(brute.first == r.k_star);
  CHECK(brute.second == doctest::Approx(r.psi_n).epsilon(1e-15));
}

TEST_CASE("oracle dimension: n=1 ties resolve to k*=0 with psi=1") {
  for (const auto& g : {basis::GammaSequence::polynomial(2.0),
                        basis::GammaSequence::analytic(1.0),
                        basis::GammaSequence::generalized(0.5, 1.5)}) {
    const auto r = oracle_dimension(g, 1, 10);
    CHECK(r.k_star == 0);
    CHECK(r.psi_n == 1.0);
  }
}

TEST_CASE("oracle dimension grows with n for the analytic family") {
  const auto g = basis::GammaSequence::analytic(1.0);
  int prev = -1;
  for (std::size_t n : {100ul, 1000ul, 10000ul}) {
    const auto r = oracle_dimension(g, n, default_k_cap(n));
    CHECK(r.k_star >= prev);
    prev = r.k_star;
  }
  CHECK(prev >= 3);  // ~ log n at n = 1e4
}

TEST_CASE("oracle dimension agrees with brute force on random configurations") {
  auto stream = rng::Stream::from_key({7777});
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 1 + stream.next_below(20000);
    basis::GammaSequence g = basis::GammaSequence::polynomial(1.0);
    switch (stream.next_below(3)) {
      case 0: g = basis::GammaSequence::polynomial(0.5 + 3.0 * stream.next_double()); break;
      case 1: g = basis::GammaSequence::analytic(0.2 + 2.0 * stream.next_double()); break;
      default:
        g = basis::GammaSequence::generalized(0.2 + stream.next_double(),
                                              0.5 + stream.next_double());
    }
    const int cap = default_k_cap(n);
    const auto r = oracle_dimension(g, n, cap);
    const auto brute = brute_oracle(g, n, cap);
    CHECK(r.k_star == brute.first);
    CHECK(r.psi_n == doctest::Approx(brute.second).epsilon(1e-15));
  }
}

TEST_CASE("oracle dimension signals an unbracketed search range") {
  // gamma grows so slowly that the crossing lies far beyond the cap.
  const auto g = basis::GammaSequence::analytic(1e-4);
  CHECK_THROWS_AS(oracle_dimension(g, 1000000, 8), std::runtime_error);
}

TEST_CASE("exact MISE: pure bias, zero case, quadrature agreement") {
  basis::CoeffVector truth(3);
  truth.at(0) = 2.0;
  truth.at(1) = 0.5;
  truth.at(-2) = 0.3;
  truth.at(3) = 0.2;

  ProjectionEstimate ideal{1, basis::CoeffVector(1)};
  ideal.coeffs.at(0) = truth.at(0);
  ideal.coeffs.at(1) = truth.at(1);
  CHECK(mise_exact(ideal, truth, 0.0) ==
        doctest::Approx(0.3 * 0.3 + 0.2 * 0.2).epsilon(1e-15));

  ProjectionEstimate zero{0, basis::CoeffVector(0)};
  CHECK(mise_exact(zero, basis::CoeffVector(0), 0.0) == 0.0);

  // Quadrature cross-check on a finite-fourier truth.
  const auto model = IntensityModel::finite_fourier(truth);
  const auto samples = sample_many(model, 40, 17);
  const auto emp = empirical_coeffs(samples, 3);
  for (int k : {0, 1, 2, 3}) {
    const auto est = project(emp, k);
    const double quad = numerics::simpson(
        [&](double t) {
          const double d = basis::synthesize(est.coeffs, t) - model(t);
          return d * d;
        },
        0.0, 1.0);
    CHECK(std::fabs(mise_exact(est, truth, 0.0) - quad) < 1e-8);
  }
}

TEST_CASE("sup over the coefficient ball: closed form and random-search domination") {
  const auto model = IntensityModel::constant(3.0);
  const auto truth = basis::true_coeffs(model, 4);
  const auto emp = empirical_coeffs(sample_many(model, 15, 23), 4);

  // beta_hat == beta gives 0
  EmpiricalCoeffs exact{truth, 15};
  CHECK(sup_ball_stat(exact, truth, 4) == 0.0);

  // k=0 single-coefficient case
  EmpiricalCoeffs shifted{basis::CoeffVector(0), 15};
  shifted.coeffs.at(0) = 3.3;
  basis::CoeffVector t0(0);
  t0.at(0) = 3.0;
  CHECK(sup_ball_stat(shifted, t0, 0) == doctest::Approx(0.09).epsilon(1e-12));

  // closed form equals the coefficient-difference sum to 1e-12
  const int k = 2;
  double direct = 0.0;
  for (int j = -k; j <= k; ++j) {
    const double d = emp.coeffs.at(j) - truth.at(j);
    direct += d * d;
  }
  const double stat = sup_ball_stat(emp, truth, k);
  CHECK(std::fabs(stat - direct) < 1e-12);

  // random unit vectors in the ball never beat the closed form, and the best
  // of 1e4 draws lands close to it (Cauchy-Schwarz is attained on the sphere;
  // a uniform search in 5 dimensions typically gets within ~1-2%)
  auto stream = rng::Stream::from_key({6161});
  double best = 0.0;
  for (int rep = 0; rep < 10000; ++rep) {
    double tau[2 * k + 1], norm2 = 0.0;
    for (auto& v : tau) {
      v = stream.next_gaussian();
      norm2 += v * v;
    }
    double inner = 0.0;
    for (int j = -k; j <= k; ++j)
      inner += (emp.coeffs.at(j) - truth.at(j)) * tau[j + k] / std::sqrt(norm2);
    best = std::max(best, inner * inner);
    CHECK(inner * inner <= stat + 1e-12);
  }
  CHECK(stat - best <= 0.02 * std::max(1.0, stat));
}

TEST_CASE("risk decomposition: bias falls and variance term grows with k") {
  basis::CoeffVector truth(5);
  truth.at(0) = 2.0;
  for (int j = 1; j <= 5; ++j) {
    truth.at(j) = 0.4 / (j * j);
    truth.at(-j) = 0.3 / (j * j * j);
  }
  // pure bias: estimates equal to the truth truncation
  EmpiricalCoeffs exact{truth, 10};
  double prev = 1e300;
  for (int k = 0; k <= 5; ++k) {
    const double m = mise_exact(project(exact, k), truth, 0.0);
    CHECK(m < prev);
    prev = m;
  }
  // variance part nondecreasing in k for fixed data
  const auto model = IntensityModel::finite_fourier(truth);
  const auto emp = empirical_coeffs(sample_many(model, 30, 5), 5);
  double prev_var = -1.0;
  for (int k = 0; k <= 5; ++k) {
    const double v = sup_ball_stat(emp, truth, k);
    CHECK(v >= prev_var);
    prev_var = v;
  }
}
