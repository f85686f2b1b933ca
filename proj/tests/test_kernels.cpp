#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "ppstat/kernels.hpp"
#include "ppstat/rng.hpp"
#include "testutil.hpp"

using namespace ppstat;

namespace {

std::vector<double> random_points(std::size_t m, std::uint64_t tag) {
  auto stream = rng::Stream::from_key({0xfeedULL, tag});
  std::vector<double> x(m);
  for (auto& v : x) v = stream.next_double();
  return x;
}

// Direct libm oracle: one trig call per (point, j).
void direct_sums(const std::vector<double>& x, int j_max, std::vector<double>& c,
                 std::vector<double>& s) {
  c.assign(j_max + 1, 0.0);
  s.assign(j_max + 1, 0.0);
  for (double xi : x) {
    for (int j = 0; j <= j_max; ++j) {
      c[j] += std::cos(testutil::kTwoPi * j * xi);
      s[j] += std::sin(testutil::kTwoPi * j * xi);
    }
  }
}

}  // namespace

TEST_CASE("scalar kernel matches direct libm evaluation") {
  for (std::size_t m : {0ul, 1ul, 3ul, 4ul, 5ul, 257ul}) {
    for (int j_max : {0, 1, 7, 64}) {
      const auto x = random_points(m, m * 131 + j_max);
      std::vector<double> oc, os, kc(j_max + 1), ks(j_max + 1);
      direct_sums(x, j_max, oc, os);
      kernels::fourier_sums_scalar(x, j_max, kc.data(), ks.data());
      const double tol = 1e-11 * (1.0 + static_cast<double>(m)) * (1.0 + j_max);
      for (int j = 0; j <= j_max; ++j) {
        CHECK(std::fabs(kc[j] - oc[j]) <= tol);
        CHECK(std::fabs(ks[j] - os[j]) <= tol);
      }
    }
  }
}

TEST_CASE("avx2 kernel agrees with the scalar reference") {
  if (!kernels::avx2_available()) {
    MESSAGE("avx2 not available; skipping equivalence check");
    return;
  }
  for (std::size_t m : {0ul, 1ul, 2ul, 3ul, 4ul, 5ul, 8ul, 63ul, 1024ul, 4097ul}) {
    for (int j_max : {0, 1, 5, 100, 431}) {
      const auto x = random_points(m, m * 977 + j_max);
      std::vector<double> sc(j_max + 1), ss(j_max + 1), vc(j_max + 1), vs(j_max + 1);
      kernels::fourier_sums_scalar(x, j_max, sc.data(), ss.data());
      kernels::fourier_sums_avx2(x, j_max, vc.data(), vs.data());
      const double tol = 1e-11 * (1.0 + static_cast<double>(m)) * (1.0 + j_max);
      for (int j = 0; j <= j_max; ++j) {
        CHECK(std::fabs(vc[j] - sc[j]) <= tol);
        CHECK(std::fabs(vs[j] - ss[j]) <= tol);
      }
    }
  }
}

TEST_CASE("dispatch override switches the active implementation") {
  kernels::set_override(kernels::Impl::scalar);
  CHECK(kernels::active() == kernels::Impl::scalar);
  kernels::set_override(std::nullopt);
  if (kernels::avx2_available()) {
    CHECK(kernels::active() == kernels::Impl::avx2);
  } else {
    CHECK(kernels::active() == kernels::Impl::scalar);
    CHECK_THROWS_AS(kernels::set_override(kernels::Impl::avx2), std::invalid_argument);
  }
  kernels::set_override(std::nullopt);
}

TEST_CASE("j=0 row is the point count") {
  const auto x = random_points(1000, 42);
  std::vector<double> c(3), s(3);
  kernels::fourier_sums(x, 2, c.data(), s.data());
  CHECK(c[0] == 1000.0);
  CHECK(s[0] == 0.0);
}
