#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "ppstat/basis.hpp"
#include "ppstat/intensity.hpp"
#include "ppstat/numerics.hpp"
#include "ppstat/rng.hpp"
#include "testutil.hpp"

using namespace ppstat;
using namespace ppstat::basis;

TEST_CASE("phi: constant branch, endpoints, sine/cosine split") {
  CHECK(phi(0, 0.37) == 1.0);
  CHECK(phi(1, 0.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(phi(-1, 0.25) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(phi(2, 0.5) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  for (int j = -5; j <= 5; ++j)
    for (double t : {0.0, 0.123, 0.5, 0.987})
      CHECK(phi(j, t) == doctest::Approx(testutil::phi_direct(j, t)).epsilon(1e-14));
}

TEST_CASE("orthonormality: Gram matrix of |i|,|j| <= 8 is the identity") {
  for (int i = -8; i <= 8; ++i) {
    for (int j = i; j <= 8; ++j) {
      const double inner = numerics::simpson(
          [&](double t) { return phi(i, t) * phi(j, t); }, 0.0, 1.0);
      const double target = (i == j) ? 1.0 : 0.0;
      CHECK(std::fabs(inner - target) < 1e-10);
    }
  }
}

TEST_CASE("true coefficients: orthogonality, exact readout, quadrature identity") {
  const auto c2 = true_coeffs(IntensityModel::constant(2.0), 2);
  CHECK(c2.at(0) == 2.0);
  for (int j : {-2, -1, 1, 2}) CHECK(c2.at(j) == 0.0);

  CoeffVector ff(1);
  ff.at(0) = 3.0;
  ff.at(1) = 0.5;
  const auto m = IntensityModel::finite_fourier(std::move(ff));
  const auto got = true_coeffs(m, 3);
  CHECK(got.at(0) == 3.0);
  CHECK(got.at(1) == 0.5);
  for (int j : {-3, -2, -1, 2, 3}) CHECK(got.at(j) == 0.0);

  // lambda = 2 + cos(2 pi t): beta_1 = 1/sqrt(2), checked against quadrature
  CoeffVector cc(1);
  cc.at(0) = 2.0;
  cc.at(1) = 1.0 / std::sqrt(2.0);
  const auto cosm = IntensityModel::finite_fourier(std::move(cc));
  const double quad = numerics::simpson(
      [&](double t) { return cosm(t) * phi(1, t); }, 0.0, 1.0);
  CHECK(std::fabs(true_coeffs(cosm, 1).at(1) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::fabs(quad - 1.0 / std::sqrt(2.0)) < 1e-10);
}

TEST_CASE("quadrature coefficients agree with exact ones on a decay model") {
  // Forces the quadrature path through a custom grid built from the model.
  const auto exact_model = IntensityModel::analytic_decay(2.0, 3.0, 2.0);
  std::vector<double> knots(2049);
  for (std::size_t i = 0; i < knots.size(); ++i)
    knots[i] = exact_model(static_cast<double>(i) / (knots.size() - 1));
  const auto grid_model = IntensityModel::custom_grid(std::move(knots));
  const auto quad = true_coeffs(grid_model, 4);
  for (int j = -4; j <= 4; ++j) {
    CHECK(std::fabs(quad.at(j) - exact_model.exact_coeff(j)) < 1e-5);
  }
}

TEST_CASE("synthesize: constants, exact reconstruction, positivity of use") {
  CoeffVector only0(0);
  only0.at(0) = 4.2;
  for (double t : {0.0, 0.3, 0.99}) CHECK(synthesize(only0, t) == 4.2);

  CoeffVector f(2);
  f.at(0) = 2.0;
  f.at(1) = 0.4;
  f.at(-2) = 0.3;
  const auto m = IntensityModel::finite_fourier(f);
  const auto back = true_coeffs(m, 2);
  for (double t : {0.0, 0.21, 0.5, 0.77}) {
    double direct = 0.0;
    for (int j = -2; j <= 2; ++j) direct += f.at(j) * testutil::phi_direct(j, t);
    CHECK(synthesize(back, t) == doctest::Approx(direct).epsilon(1e-13));
  }
}

TEST_CASE("round-trip error bounded by the coefficient tail for a decay model") {
  const auto m = IntensityModel::sobolev_decay(2.0, 0.7, 3.5);
  const int J = 64;
  const auto c = true_coeffs(m, J);
  // sup_t |sum_{|j|>J} beta_j phi_j| <= sqrt(2) sum_{|j|>J} |beta_j|
  double tail_bound = 0.0;
  for (int j = J + 1; j <= 100000; ++j)
    tail_bound += 2.0 * std::sqrt(2.0) * 0.7 * std::pow(j, -3.5);
  REQUIRE(tail_bound <= 1e-3);
  double worst = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double t = i / 2000.0;
    worst = std::max(worst, std::fabs(synthesize(c, t) - m(t)));
  }
  CHECK(worst <= 1e-3);
  CHECK(worst <= tail_bound + 1e-9);
}

TEST_CASE("l2 norm: zero, arithmetic, Parseval against quadrature") {
  CHECK(l2_norm_sq(CoeffVector(3)) == 0.0);

  CoeffVector c(1);
  c.at(0) = 3.0;
  c.at(1) = 0.5;
  CHECK(l2_norm_sq(c) == 9.25);

  auto stream = rng::Stream::from_key({2718});
  for (int rep = 0; rep < 5; ++rep) {
    CoeffVector r(4);
    for (int j = -4; j <= 4; ++j) r.at(j) = 2.0 * stream.next_double() - 1.0;
    const double quad = numerics::simpson(
        [&](double t) {
          const double v = synthesize(r, t);
          return v * v;
        },
        0.0, 1.0);
    CHECK(std::fabs(l2_norm_sq(r) - quad) < 1e-10);
  }
}

TEST_CASE("gamma values: families, symmetry, unit at zero") {
  const auto poly = GammaSequence::polynomial(2.0);
  CHECK(gamma_value(poly, 3) == 9.0);
  CHECK(gamma_value(poly, -3) == 9.0);
  const auto ana = GammaSequence::analytic(0.5);
  CHECK(gamma_value(ana, -2) == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
  const auto gen = GammaSequence::generalized(0.5, 2.0);
  CHECK(gamma_value(gen, 2) == doctest::Approx(std::exp(2.0 * 0.5 * 4.0)).epsilon(1e-14));
  for (const auto& g : {poly, ana, gen}) CHECK(gamma_value(g, 0) == 1.0);
}

TEST_CASE("gamma monotone nondecreasing in |j| up to 1000") {
  for (const auto& g : {GammaSequence::polynomial(0.5), GammaSequence::analytic(0.01),
                        GammaSequence::generalized(0.3, 0.4)}) {
    double prev = gamma_value(g, 0);
    for (int j = 1; j <= 1000; ++j) {
      const double cur = gamma_value(g, j);
      CHECK(cur >= prev);
      prev = cur;
    }
  }
}

TEST_CASE("gamma norm: zero, unit weight at j=0, polynomial example") {
  const auto poly1 = GammaSequence::polynomial(1.0);
  CHECK(gamma_norm_sq(CoeffVector(2), poly1) == 0.0);

  CoeffVector b0(0);
  b0.at(0) = 1.0;
  CHECK(gamma_norm_sq(b0, GammaSequence::analytic(3.0)) == 1.0);

  CoeffVector pm(1);
  pm.at(1) = 0.5;
  pm.at(-1) = 0.5;
  CHECK(gamma_norm_sq(pm, poly1) == 0.5);
}

TEST_CASE("membership holds with equality on a class-boundary model") {
  const auto gamma = GammaSequence::polynomial(2.0);
  // Build coefficients with sum gamma^2 beta^2 = L^2 exactly.
  CoeffVector c(2);
  c.at(0) = 3.0;
  c.at(1) = 0.5;   // gamma_1^2 = 1: contributes 0.25
  c.at(-2) = 0.25; // gamma_2^2 = 16: contributes 1
  const double L2 = 9.0 + 0.25 + 1.0;
  const SmoothnessClass cls{gamma, std::sqrt(L2)};
  CHECK(cls.contains(c, 1e-12));
  CoeffVector d = c;
  d.at(2) = 1e-3;
  CHECK_FALSE(cls.contains(d, 1e-12));
  // And the full-model overload on the same coefficients.
  const auto model = IntensityModel::finite_fourier(c);
  CHECK(cls.contains(model, 2, 1e-9));
}

TEST_CASE("coefficient vector JSON round-trip") {
  CoeffVector c(2);
  c.at(-2) = 0.125;
  c.at(0) = 1.5;
  c.at(1) = -0.25;
  const auto back = CoeffVector::from_json(c.to_json());
  CHECK(back.J() == 2);
  for (int j = -2; j <= 2; ++j) CHECK(back.at(j) == c.at(j));
}
