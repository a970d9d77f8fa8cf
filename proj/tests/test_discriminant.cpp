#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "test_support.hpp"
#include "triband/discriminant.hpp"
#include "triband/free_case.hpp"
#include "triband/monodromy.hpp"
#include "triband/multipliers.hpp"

using namespace triband;

TEST_CASE("trace formula values") {
  CHECK(rho_trace_formula(Complex{3}) == 0.0L);
  CHECK(rho_trace_formula(Complex{}) == -27.0L);
  const MonodromyResult m = propagate(PeriodicCoefficients::from_constants(0, 0, 1), 1.0L);
  const FreeCaseValues f = free_case(Complex{1, 0});
  CHECK(std::fabs(rho_trace_formula(m.trace_T) - f.rho0.real()) <= 1e-8L * std::abs(f.rho0));
}

TEST_CASE("product formula values") {
  CHECK(rho_product_formula({Complex{1}, Complex{1}, Complex{1}}) == Complex{});
  const Complex r = rho_product_formula({Complex{1}, kOmega, kOmega * kOmega});
  CHECK(std::abs(r - Complex{-27}) < 1e-15L);
}

TEST_CASE("trace and product forms agree") {
  for (const auto& c : {PeriodicCoefficients::from_constants(0, 0, 1),
                        PeriodicCoefficients::from_constants(1, -0.5, 4), testing::sampled_sin()}) {
    for (Real x = -500; x <= 500; x += 37.7L) {
      const DiscriminantValue v = evaluate_discriminant(c, x);
      const Real scale = 1 + std::fabs(v.rho_trace);
      CHECK(v.residual <= 1e-6L * scale);
      CHECK(std::fabs(v.rho_product.imag()) <= 1e-8L * scale);
      const MultiplierSet ms = multipliers_from(propagate(c, x));
      if (ms.classification == CircleClass::OneOnCircle) CHECK(v.rho_product.real() > 0);
    }
  }
}

TEST_CASE("rho for constant coefficients from the symbol") {
  // Three real symbol roots xi_j give rho = -64 prod sin^2((xi_a - xi_b)/2).
  const Real p = 5, q = 0;
  for (Real lambda : {-11.0L, -4.0L, 0.5L, 6.0L, 12.0L}) {
    // Roots of xi^3 - 10 xi - lambda, trigonometric form.
    const Real r = 2 * std::sqrt(2 * p / 3);
    const Real phi = std::acos(3 * (lambda - q) / (4 * p) * std::sqrt(3 / (2 * p))) / 3;
    Real xi[3];
    for (int j = 0; j < 3; ++j) xi[j] = r * std::cos(phi - 2 * kPi * j / 3);
    Real want = -64;
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) want *= std::pow(std::sin((xi[a] - xi[b]) / 2), 2);
    const MonodromyResult m = propagate(PeriodicCoefficients::from_constants(p, q, 8), lambda);
    CHECK(std::fabs(rho_trace_formula(m.trace_T) - want) <= 1e-10L);
  }
}

TEST_CASE("free Sigma_3 is empty with a touch at 0") {
  const Sigma3Report r = sigma3_intervals(PeriodicCoefficients::from_constants(0, 0, 1), -100, 100, 2001, 1e-10L);
  CHECK(r.intervals.empty());
  REQUIRE(r.touches.size() == 1);
  CHECK(std::fabs(r.touches[0].lambda) < 1e-6L);
}

TEST_CASE("constant p = 5 Sigma_3 matches the symbol") {
  const auto c = PeriodicCoefficients::from_constants(5, 1, 8);
  oracle::R lo = 0, hi = 0;
  REQUIRE(oracle::constant_sigma3(5, 1, lo, hi));
  const Sigma3Report r = sigma3_intervals(c, -100, 100, 2001, 1e-10L);
  REQUIRE(r.intervals.size() == 1);
  const Sigma3Interval& iv = r.intervals[0];
  CHECK(std::fabs(iv.lo - lo) < 1e-8L);
  CHECK(std::fabs(iv.hi - hi) < 1e-8L);
  CHECK(rho_trace_formula(propagate(c, (iv.lo + iv.hi) / 2).trace_T) < 0);
  CHECK(rho_trace_formula(propagate(c, iv.lo - 1e-6L).trace_T) > 0);
  CHECK(rho_trace_formula(propagate(c, iv.hi + 1e-6L).trace_T) > 0);
  CHECK_FALSE(iv.open_left);
  CHECK_FALSE(iv.open_right);
}

TEST_CASE("Sigma_3 of sampled coefficients is self-consistent") {
  const auto c = PeriodicCoefficients::from_constants(5, 0, 8);
  const auto [a, b] = default_search_interval(c);
  const Sigma3Report r = sigma3_intervals(c, a, b, 4001, 1e-10L);
  REQUIRE_FALSE(r.intervals.empty());
  for (const auto& iv : r.intervals) {
    CHECK(rho_trace_formula(propagate(c, (iv.lo + iv.hi) / 2).trace_T) < 0);
    CHECK(rho_trace_formula(propagate(c, iv.lo - 1e-7L).trace_T) > 0);
    CHECK(rho_trace_formula(propagate(c, iv.hi + 1e-7L).trace_T) > 0);
  }
}

TEST_CASE("far intervals are free of Sigma_3") {
  const auto c = testing::sampled_sin();
  const Sigma3Report r = sigma3_intervals(c, 1e5, 2e5, 501, 1e-10L);
  CHECK(r.intervals.empty());
  CHECK(r.touches.empty());
  CHECK_THROWS_AS(sigma3_intervals(c, 1, 0, 10, 1e-10L), std::invalid_argument);
  CHECK_THROWS_AS(sigma3_intervals(c, 0, 1, 1, 1e-10L), std::invalid_argument);
  CHECK_THROWS_AS(sigma3_intervals(c, 0, 1, 10, 0), std::invalid_argument);
}

TEST_CASE("default search interval grows with kappa") {
  const auto [a, b] = default_search_interval(PeriodicCoefficients::from_constants(1, 1, 1));
  CHECK(b == doctest::Approx(27000.0));
  CHECK(a == -b);
}
