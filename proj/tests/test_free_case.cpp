#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "triband/discriminant.hpp"
#include "triband/free_case.hpp"
#include "triband/monodromy.hpp"

using namespace triband;

TEST_CASE("free case at lambda = 0 and 8") {
  const FreeCaseValues f0 = free_case(Complex{});
  for (const Complex& t : f0.taus0) CHECK(t == Complex{1});
  CHECK(f0.T0 == Complex{3});
  CHECK(f0.rho0 == Complex{});

  const FreeCaseValues f8 = free_case(Complex{8, 0});
  CHECK(std::abs(f8.z - Complex{2}) < 1e-18L);
  CHECK(std::abs(f8.taus0[0] - std::exp(Complex{0, 2})) < 1e-15L);
  CHECK(std::abs(f8.taus0[1] - std::exp(Complex{-std::sqrt(3.0L), -1})) < 1e-15L);
  CHECK(std::abs(f8.taus0[2] - std::exp(Complex{std::sqrt(3.0L), -1})) < 1e-15L);
  CHECK(std::abs(f8.lyapunov0[0] - std::cos(Complex{2})) < 1e-15L);
}

TEST_CASE("free case at lambda = -1") {
  const FreeCaseValues f = free_case(Complex{-1, 0});
  CHECK(std::abs(f.z - std::polar(1.0L, kPi / 3)) < 1e-18L);
  CHECK(f.rho0.real() > 0);
  CHECK(std::fabs(f.rho0.imag()) < 1e-15L * f.rho0.real());
}

TEST_CASE("free case invariants") {
  for (Complex lambda : {Complex{1, 0}, Complex{-1000, 0}, Complex{300, -200}, Complex{1e6, 0},
                         Complex{0, 5e5}}) {
    const FreeCaseValues f = free_case(lambda);
    const Complex prod = f.taus0[0] * f.taus0[1] * f.taus0[2];
    CHECK(std::abs(prod - Complex{1}) < 1e-12L);
    CHECK(std::abs(f.T0 - (f.taus0[0] + f.taus0[1] + f.taus0[2])) <= 1e-15L * std::abs(f.T0));
    CHECK(std::abs(f.T0 - oracle::free_trace(lambda)) <= 1e-15L * std::abs(f.T0));
    const MonodromyResult m = propagate(PeriodicCoefficients::from_constants(0, 0, 1), lambda);
    CHECK(std::abs(m.trace_T - f.T0) <= 1e-10L * std::abs(f.T0));
    for (int j = 0; j < 3; ++j) {
      CHECK(std::abs(f.lyapunov0[j] - (f.taus0[j] + 1.0L / f.taus0[j]) / 2.0L) <=
            1e-12L * std::abs(f.lyapunov0[j]));
    }
  }
}

TEST_CASE("rho0 closed form against the trace formula") {
  for (Real x : {1.0L, -1.0L, 0.5L, 27.0L, -1000.0L, 2e5L, -1e6L}) {
    const FreeCaseValues f = free_case(Complex{x, 0});
    const Real rho = rho_trace_formula(f.T0);
    CHECK(std::abs(f.rho0 - rho) <= 1e-8L * std::abs(f.rho0));
    CHECK(f.rho0.real() > 0);
  }
}

TEST_CASE("free eigenvalues") {
  CHECK(free_eigenvalues(0, 0, 0) == std::vector<Real>{0});
  CHECK(free_eigenvalues(1, 1, 1)[0] == doctest::Approx(std::pow(2 * M_PI + 1, 3)));
  const Real neg = free_eigenvalues(1, -1, -1)[0];
  CHECK(neg < 0);
  CHECK(neg == doctest::Approx(std::pow(1 - 2 * M_PI, 3)));
  const auto list = free_eigenvalues(2.5L, -4, 4);
  CHECK(list.size() == 9);
  CHECK(std::is_sorted(list.begin(), list.end()));
}
