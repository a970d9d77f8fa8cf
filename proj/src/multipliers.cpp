#include "triband/multipliers.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace triband {

namespace {

// Monic tau^3 + c2 tau^2 + c1 tau + c0.
Triple companion_roots(Complex c2, Complex c1, Complex c0) {
  Matrix3 comp = Matrix3::Zero();
  comp(0, 0) = -c2;
  comp(0, 1) = -c1;
  comp(0, 2) = -c0;
  comp(1, 0) = 1.0L;
  comp(2, 1) = 1.0L;
  Eigen::ComplexEigenSolver<Matrix3> solver(comp, false);
  const auto& ev = solver.eigenvalues();
  return {ev(0), ev(1), ev(2)};
}

Complex largest(const Triple& t) {
  return *std::max_element(t.begin(), t.end(),
                           [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });
}

// Principal log of a / b without forming the quotient (entries may be huge).
Complex log_ratio(Complex a, Complex b) {
  Complex d = std::log(a) - std::log(b);
  Real im = std::remainder(d.imag(), 2 * kPi);
  return {d.real(), im};
}

constexpr std::array<std::array<int, 3>, 6> kPermutations{{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

struct Matching {
  std::array<int, 3> best{0, 1, 2};
  Real best_cost = 0.0L;
  Real runner_up = 0.0L;
};

// Chooses perm minimising sum_j |log(from[perm[j]] / to[j])|.
Matching match(const Triple& from, const Triple& to) {
  Matching m;
  m.best_cost = std::numeric_limits<Real>::infinity();
  m.runner_up = std::numeric_limits<Real>::infinity();
  for (const auto& perm : kPermutations) {
    Real cost = 0.0L;
    for (int j = 0; j < 3; ++j) cost += std::abs(log_ratio(from[perm[j]], to[j]));
    if (cost < m.best_cost) {
      m.runner_up = m.best_cost;
      m.best_cost = cost;
      m.best = perm;
    } else if (cost < m.runner_up) {
      m.runner_up = cost;
    }
  }
  return m;
}

Triple permute(const Triple& t, const std::array<int, 3>& perm) {
  return {t[perm[0]], t[perm[1]], t[perm[2]]};
}

bool near_coincidence(const Triple& taus, Real tol) {
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      const Real scale = 1.0L + std::max(std::abs(taus[a]), std::abs(taus[b]));
      if (std::abs(taus[a] - taus[b]) <= tol * scale) return true;
    }
  }
  return false;
}

bool clustered(const Triple& taus, Real tol) {
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      if (std::abs(taus[a] - taus[b]) > tol) return false;
    }
  }
  return true;
}

}  // namespace

Triple solve_multipliers(Complex T, Complex T_conj_bar) {
  // Monic form tau^3 - T tau^2 + Tcb tau - 1; reversal sigma^3 - Tcb sigma^2 + T sigma - 1.
  const Complex one{1.0L, 0.0L};
  Triple roots;
  if (std::max(std::abs(T), std::abs(T_conj_bar)) <= 1e3L) {
    roots = companion_roots(-T, T_conj_bar, -one);
    // A tight cluster (near tau = 1 at lambda = 0 for instance) loses a cube
    // root of the precision. Shifting to the cluster centre T/3 first keeps
    // an exact triple root exact.
    if (clustered(roots, 1e-2L)) {
      const Complex m = T / 3.0L;
      const Complex a = T_conj_bar - T * T / 3.0L;
      const Complex b = -2.0L * T * T * T / 27.0L + T * T_conj_bar / 3.0L - one;
      roots = companion_roots(Complex{}, a, b);
      for (Complex& r : roots) r += m;
    }
  } else {
    const Complex big = largest(companion_roots(-T, T_conj_bar, -one));
    const Complex small = one / largest(companion_roots(-T_conj_bar, T, -one));
    roots = {big, one / (big * small), small};
  }

  auto f = [&](Complex t) { return ((t - T) * t + T_conj_bar) * t - one; };
  auto df = [&](Complex t) { return (3.0L * t - 2.0L * T) * t + T_conj_bar; };
  for (Complex& r : roots) {
    const Complex slope = df(r);
    if (slope == Complex{}) continue;
    const Complex candidate = r - f(r) / slope;
    if (std::isfinite(candidate.real()) && std::isfinite(candidate.imag()) &&
        std::abs(f(candidate)) < std::abs(f(r))) {
      r = candidate;
    }
  }
  return roots;
}

MultiplierSet lyapunov_and_quasimomenta(MultiplierSet ms) {
  for (int j = 0; j < 3; ++j) {
    const Complex tau = ms.taus[j];
    assert(tau != Complex{});
    ms.lyapunov[j] = (tau + 1.0L / tau) / 2.0L;
    const Complex log_tau = std::log(tau);
    Real re = log_tau.imag();
    if (re < 0.0L) re += 2 * kPi;
    if (re >= 2 * kPi) re -= 2 * kPi;
    ms.quasimomenta[j] = {re, -log_tau.real()};
  }
  return ms;
}

MultiplierSet label_asymptotically(MultiplierSet ms) {
  const SpectralParameter param = SpectralParameter::at(ms.lambda);
  // Logs, not e^{i z omega^j}: the free multipliers overflow long before their logs do.
  std::array<int, 3> best_perm{0, 1, 2};
  Real best_cost = std::numeric_limits<Real>::infinity();
  for (const auto& perm : kPermutations) {
    Real cost = 0.0L;
    for (int j = 0; j < 3; ++j) {
      const Complex d = std::log(ms.taus[perm[j]]) - kI * param.z * omega_power(j);
      cost += std::abs(Complex{d.real(), std::remainder(d.imag(), 2 * kPi)});
    }
    if (cost < best_cost) {
      best_cost = cost;
      best_perm = perm;
    }
  }
  ms.taus = permute(ms.taus, best_perm);
  ms.lyapunov = permute(ms.lyapunov, best_perm);
  ms.quasimomenta = permute(ms.quasimomenta, best_perm);
  ms.labels = {1, 2, 3};
  return ms;
}

CircleClass classify_on_circle(const MultiplierSet& ms, Real tol) {
  if (ms.lambda.imag() != 0.0L) {
    throw std::invalid_argument("unit-circle classification needs real lambda");
  }
  int on_circle = 0;
  for (const Complex& t : ms.taus) {
    if (std::fabs(std::abs(t) - 1.0L) <= tol) ++on_circle;
  }
  if (on_circle == 3) return CircleClass::AllOnCircle;
  if (on_circle == 1) return CircleClass::OneOnCircle;
  return CircleClass::Degenerate;
}

MultiplierSet multipliers_from(const MonodromyResult& m, Real circle_tol) {
  if (!m.param.is_real()) {
    throw std::invalid_argument("complex lambda needs the evaluation at conj(lambda)");
  }
  MultiplierSet ms;
  ms.lambda = m.param.lambda;
  ms.taus = solve_multipliers(m.trace_T, std::conj(m.trace_T));
  ms = label_asymptotically(lyapunov_and_quasimomenta(ms));
  ms.classification = classify_on_circle(ms, circle_tol);
  return ms;
}

MultiplierSet multipliers_from(const MonodromyResult& m, const MonodromyResult& m_conjugate) {
  MultiplierSet ms;
  ms.lambda = m.param.lambda;
  ms.taus = solve_multipliers(m.trace_T, std::conj(m_conjugate.trace_T));
  return label_asymptotically(lyapunov_and_quasimomenta(ms));
}

std::vector<MultiplierSet> continue_branches(std::span<const Real> grid,
                                             std::span<const MultiplierSet> sets,
                                             const ContinuationOptions& opts) {
  if (grid.size() != sets.size()) {
    throw std::invalid_argument("grid and multiplier sets differ in length");
  }
  std::vector<std::size_t> order(grid.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return grid[a] < grid[b]; });

  std::vector<MultiplierSet> out;
  out.reserve(grid.size());
  for (std::size_t idx : order) out.push_back(sets[idx]);
  if (out.empty()) return out;

  auto apply = [](MultiplierSet& ms, const std::array<int, 3>& perm) {
    ms.taus = permute(ms.taus, perm);
    ms.lyapunov = permute(ms.lyapunov, perm);
    ms.quasimomenta = permute(ms.quasimomenta, perm);
    ms.labels = {1, 2, 3};
  };

  out.back() = label_asymptotically(out.back());
  for (MultiplierSet& ms : out) {
    ms.near_branch_point = near_coincidence(ms.taus, opts.branch_separation);
  }
  for (std::size_t i = out.size() - 1; i-- > 0;) {
    const Matching m = match(out[i].taus, out[i + 1].taus);
    apply(out[i], m.best);
    out[i].ambiguous_match =
        m.runner_up - m.best_cost <= opts.tie_tolerance * (1.0L + m.best_cost);
  }
  return out;
}

const char* to_string(CircleClass c) {
  switch (c) {
    case CircleClass::AllOnCircle:
      return "AllOnCircle";
    case CircleClass::OneOnCircle:
      return "OneOnCircle";
    case CircleClass::Degenerate:
      return "Degenerate";
  }
  return "?";
}

}  // namespace triband
