#include <cmath>

#include "doctest.h"
#include "test_support.hpp"
#include "triband/verify.hpp"

using namespace triband;

TEST_CASE("sample sets") {
  const auto xs = real_samples(4, 0, 8);
  REQUIRE(xs.size() == 4);
  CHECK(xs[0] == 1.0L);
  CHECK(xs[3] == 7.0L);
  const auto zs = disk_samples(100, 5);
  REQUIRE(zs.size() == 100);
  for (const Complex& z : zs) CHECK(std::abs(z) <= 5.0L);
  CHECK(disk_samples(100, 5) == zs);
}

TEST_CASE("all suites pass on the reference coefficients") {
  for (const auto& c : {PeriodicCoefficients::from_constants(0, 0, 1),
                        PeriodicCoefficients::from_constants(1, -0.5, 4), testing::sampled_sin()}) {
    const auto suites = run_verification(c);
    CHECK(suites.size() == 6);
    for (const auto& s : suites) {
      INFO(s.name);
      CHECK(s.passed);
      CHECK(s.failures == 0);
      CHECK(s.checks > 0);
      CHECK(s.worst_ratio <= 1.0L);
    }
  }
}
