#include <cmath>
#include <vector>

#include <Eigen/LU>

#include "doctest.h"
#include "oracles.hpp"
#include "test_support.hpp"
#include "triband/floquet.hpp"
#include "triband/free_case.hpp"
#include "triband/monodromy.hpp"
#include "triband/multipliers.hpp"

using namespace triband;

namespace {

const PeriodicCoefficients kZero = PeriodicCoefficients::from_constants(0, 0, 1);

Real rel(Real got, Real want) { return std::fabs(got - want) / std::max<Real>(std::fabs(want), 1); }

}  // namespace

TEST_CASE("F against det(M - e^{ik})") {
  for (const auto& c : {kZero, testing::sampled_sin(), PeriodicCoefficients::from_constants(5, 1, 8)}) {
    for (Real x : {-120.0L, -1.0L, 0.4L, 33.0L, 260.0L}) {
      const MonodromyResult m = propagate(c, x);
      for (Real k : {0.0L, 0.7L, 2.0L, kPi, 4.4L, 6.2L}) {
        const Complex tau = std::polar(1.0L, k);
        const Complex det = (m.M - tau * Matrix3::Identity()).determinant();
        const Complex via_f = 2.0L * kI * std::polar(1.0L, 1.5L * k) * char_real_function(k, m.trace_T);
        CHECK(std::abs(det - via_f) <= 1e-12L * (1 + std::abs(m.trace_T)));
      }
    }
  }
}

TEST_CASE("F closed form for zero coefficients at k = 0") {
  for (Real z : {0.3L, 1.0L, 2.5L, 6.0L}) {
    const Complex T = free_case(Complex{z * z * z, 0}).T0;
    const Real want = std::sin(z) - 2 * std::cosh(std::sqrt(3.0L) * z / 2) * std::sin(z / 2);
    CHECK(std::fabs(char_real_function(0, T) - want) <= 1e-15L * std::cosh(z));
  }
  CHECK(std::fabs(char_real_function(0, free_case(Complex{std::pow(2 * kPi, 3), 0}).T0)) < 1e-12L);
}

TEST_CASE("F at k = pi and at multipliers") {
  CHECK(char_real_function(kPi, Complex{2.5L, 0}) == doctest::Approx(3.5));
  const auto c = testing::sampled_sin();
  for (Real x : {-50.0L, 7.0L, 90.0L}) {
    const MonodromyResult m = propagate(c, x);
    for (const Complex& tau : multipliers_from(m).taus) {
      if (std::fabs(std::abs(tau) - 1) > 1e-10L) continue;
      Real k = std::arg(tau);
      if (k < 0) k += 2 * kPi;
      CHECK(std::fabs(char_real_function(k, m.trace_T)) <= 1e-12L * (1 + std::abs(m.trace_T)));
    }
  }
}

TEST_CASE("free eigenvalues") {
  const FloquetSpectrum s = eigenvalues_at_k(kZero, 1.0L, -5, 5, 1e-12L);
  CHECK(s.reliable);
  REQUIRE(s.eigenvalues.size() == 11);
  const auto want = free_eigenvalues(1.0L, -5, 5);
  for (std::size_t i = 0; i < want.size(); ++i) {
    CHECK(s.eigenvalues[i].n == static_cast<int>(i) - 5);
    CHECK(rel(s.eigenvalues[i].lambda, want[i]) <= 1e-8L);
    CHECK(std::fabs(s.eigenvalues[i].cube_root_gap) < 1e-9L);
  }
  const FloquetSpectrum z = eigenvalues_at_k(kZero, 0, 0, 0, 1e-12L);
  REQUIRE(z.eigenvalues.size() == 1);
  CHECK(std::fabs(z.eigenvalues[0].lambda) < 1e-12L);
}

TEST_CASE("constant coefficients match the symbol") {
  for (Real k : {0.2L, 1.0L, 3.0L, 5.5L}) {
    const FloquetSpectrum s =
        eigenvalues_at_k(PeriodicCoefficients::from_constants(0.5, 0.3, 64), k, -8, 8, 1e-12L);
    CHECK(s.reliable);
    const auto want = oracle::constant_eigenvalues(0.5L, 0.3L, k, -8, 8);
    REQUIRE(s.eigenvalues.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
      CHECK(std::fabs(s.eigenvalues[i].lambda - want[i]) <= 1e-9L * std::max<Real>(1, std::fabs(want[i])));
    }
  }
}

TEST_CASE("cube root gap decays like 1/n") {
  const FloquetSpectrum s =
      eigenvalues_at_k(PeriodicCoefficients::from_constants(0.5, 0.3, 64), 1.0L, 10, 40, 1e-12L);
  REQUIRE(s.eigenvalues.size() == 31);
  // Exact limit for constant coefficients: cbrt(xi^3 - xi + 0.3) - xi ~ -1/(3 xi),
  // so gap * n -> -1/(6 pi).
  for (const auto& e : s.eigenvalues) {
    const Real scaled = e.cube_root_gap * e.n;
    CHECK(std::fabs(scaled + 1 / (6 * kPi)) <= 0.2L / e.n);
  }
}

TEST_CASE("degenerate eigenvalues of constant coefficients") {
  SUBCASE("double at k = pi") {
    // xi^3 - pi^2 xi vanishes at xi = -pi and pi.
    const auto c = PeriodicCoefficients::from_constants(M_PI * M_PI / 2, 0, 4);
    const FloquetSpectrum s = eigenvalues_at_k(c, kPi, -3, 3, 1e-10L);
    CHECK(s.reliable);
    const auto want = oracle::constant_eigenvalues(M_PI * M_PI / 2, 0, kPi, -3, 3);
    REQUIRE(s.eigenvalues.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
      CHECK(std::fabs(s.eigenvalues[i].lambda - want[i]) <= 1e-6L * std::max<Real>(1, std::fabs(want[i])));
    }
    CHECK(s.eigenvalues[2].multiplicity == 2);
    CHECK(s.eigenvalues[3].multiplicity == 2);
    CHECK(s.eigenvalues[1].multiplicity == 1);
  }
  SUBCASE("triple at k = 0") {
    // xi^3 - 4 pi^2 xi vanishes at 0 and +-2 pi.
    const auto c = PeriodicCoefficients::from_constants(2 * M_PI * M_PI, 0, 4);
    const FloquetSpectrum s = eigenvalues_at_k(c, 0, -3, 3, 1e-10L);
    CHECK(s.reliable);
    const auto want = oracle::constant_eigenvalues(2 * M_PI * M_PI, 0, 0, -3, 3);
    REQUIRE(s.eigenvalues.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
      CHECK(std::fabs(s.eigenvalues[i].lambda - want[i]) <= 1e-6L * std::max<Real>(1, std::fabs(want[i])));
    }
    for (int i : {2, 3, 4}) CHECK(s.eigenvalues[i].multiplicity == 3);
  }
}

TEST_CASE("eigenvalue invariants on sampled coefficients") {
  const auto c = testing::sampled_sin();
  const Real tol = 1e-10L;
  for (Real k : {0.0L, 0.9L, 2.4L, 4.0L}) {
    const FloquetSpectrum s = eigenvalues_at_k(c, k, -6, 6, tol);
    CHECK(s.reliable);
    REQUIRE(s.eigenvalues.size() == 13);
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
      const FloquetEigenvalue& e = s.eigenvalues[i];
      CHECK(e.n == static_cast<int>(i) - 6);
      if (i > 0) CHECK(e.lambda >= s.eigenvalues[i - 1].lambda);
      CHECK(e.residual <= tol);
      const MonodromyResult m = propagate(c, e.lambda);
      // A direct determinant loses eps |M|^2; only trust it while M is moderate.
      if (std::abs(m.trace_T) <= 1e6L) {
        const Complex det = (m.M - std::polar(1.0L, k) * Matrix3::Identity()).determinant();
        CHECK(std::abs(det) / (1 + std::abs(m.trace_T)) <= 1e-6L);
      }
      // Some multiplier is e^{ik}.
      const MultiplierSet ms = multipliers_from(m);
      Real closest = INFINITY;
      for (const Complex& t : ms.taus) closest = std::min(closest, std::abs(t - std::polar(1.0L, k)));
      CHECK(closest <= 1e-6L);
    }
  }
}

// Conjugation maps H(k) for (p, q) onto -H(2 pi - k) for (p, -q), so the
// lists at k and 2 pi - k are not equal; they pair as lambda_n = -lambda'_{-n-1}.
TEST_CASE("conjugation pairs k with 2 pi - k") {
  const auto c = testing::sampled_sin();
  std::vector<double> q_neg = c.q_samples();
  for (double& v : q_neg) v = -v;
  const auto c_neg = PeriodicCoefficients::from_samples(c.p_samples(), q_neg);
  for (Real k : {0.5L, 1.3L, 2.9L}) {
    const auto a = eigenvalues_at_k(c, k, -5, 5, 1e-12L);
    const auto b = eigenvalues_at_k(c_neg, 2 * kPi - k, -6, 4, 1e-12L);
    REQUIRE(a.eigenvalues.size() == 11);
    REQUIRE(b.eigenvalues.size() == 11);
    for (std::size_t i = 0; i < 11; ++i) {
      CHECK(b.eigenvalues[10 - i].n == -a.eigenvalues[i].n - 1);
      CHECK(rel(a.eigenvalues[i].lambda, -b.eigenvalues[10 - i].lambda) <= 1e-9L);
    }
  }
  SUBCASE("zero coefficients") {
    const auto a = eigenvalues_at_k(kZero, 0.7L, -3, 3, 1e-12L);
    const auto b = eigenvalues_at_k(kZero, 2 * kPi - 0.7L, -4, 2, 1e-12L);
    for (std::size_t i = 0; i < 7; ++i) {
      const Real want = std::pow(2 * kPi * a.eigenvalues[i].n + 0.7L, 3);
      CHECK(rel(a.eigenvalues[i].lambda, want) <= 1e-10L);
      CHECK(rel(b.eigenvalues[6 - i].lambda, -want) <= 1e-10L);
    }
  }
}

// t -> -t together with conjugation keeps k, so reversed samples share the spectrum.
TEST_CASE("reversed coefficients give the same eigenvalues") {
  const auto c = testing::sampled_sin();
  std::vector<double> p(c.p_samples().rbegin(), c.p_samples().rend());
  std::vector<double> q(c.q_samples().rbegin(), c.q_samples().rend());
  const auto r = PeriodicCoefficients::from_samples(p, q);
  for (Real k : {0.5L, 4.1L}) {
    const auto a = eigenvalues_at_k(c, k, -5, 5, 1e-12L);
    const auto b = eigenvalues_at_k(r, k, -5, 5, 1e-12L);
    REQUIRE(a.eigenvalues.size() == b.eigenvalues.size());
    for (std::size_t i = 0; i < a.eigenvalues.size(); ++i) {
      CHECK(rel(a.eigenvalues[i].lambda, b.eigenvalues[i].lambda) <= 1e-9L);
    }
  }
}

TEST_CASE("union over k covers the real axis") {
  const auto c = testing::sampled_sin(32);
  std::vector<Real> all;
  const int kgrid = 64;
  for (int i = 0; i < kgrid; ++i) {
    const Real k = 2 * kPi * i / kgrid;
    for (const auto& e : eigenvalues_at_k(c, k, -2, 2, 1e-10L).eigenvalues) all.push_back(e.lambda);
  }
  std::sort(all.begin(), all.end());
  // In w = cbrt(lambda) each index sweeps a window of width 2 pi as k runs
  // once around, so neighbouring union points are about 2 pi / kgrid apart.
  const Real w_step = 2 * kPi / kgrid;
  for (Real x = -1500; x <= 1500; x += 37.0L) {
    Real best = INFINITY;
    for (Real y : all) best = std::min(best, std::fabs(std::cbrt(y) - std::cbrt(x)));
    CHECK(best <= 2 * w_step);
  }
}

TEST_CASE("disk counts") {
  const auto small = PeriodicCoefficients::from_constants(0.1, 0, 8);
  for (const auto& c : {kZero, small}) {
    const DiskCount a = count_in_disk(c, 0.3L, 5);
    CHECK(a.case_a);
    CHECK(a.expected == 11);
    CHECK(a.real_root_count == 11);
    CHECK(a.winding_count == 11);
    CHECK(a.reliable);
    CHECK(a.asymptotic_regime);
    CHECK(a.radius == doctest::Approx(std::pow(11 * M_PI, 3)));

    const DiskCount b = count_in_disk(c, 2.0L, 5);
    CHECK_FALSE(b.case_a);
    CHECK(b.expected == 10);
    CHECK(b.real_root_count == 10);
    CHECK(b.winding_count == 10);
    CHECK(b.radius == doctest::Approx(std::pow(10 * M_PI, 3)));
  }
  CHECK_THROWS_AS(count_in_disk(kZero, 0.3L, 0), std::invalid_argument);
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(eigenvalues_at_k(kZero, -0.1L, 0, 1, 1e-10L), std::invalid_argument);
  CHECK_THROWS_AS(eigenvalues_at_k(kZero, 2 * kPi, 0, 1, 1e-10L), std::invalid_argument);
  CHECK_THROWS_AS(eigenvalues_at_k(kZero, 1, 2, 1, 1e-10L), std::invalid_argument);
  CHECK_THROWS_AS(eigenvalues_at_k(kZero, 1, 0, 1, 0), std::invalid_argument);
}
