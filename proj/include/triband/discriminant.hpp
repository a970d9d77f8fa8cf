#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "triband/coeffs.hpp"
#include "triband/types.hpp"

namespace triband {

/// rho(lambda) for real lambda, evaluated from the trace and from the
/// multipliers.
struct DiscriminantValue {
  Real lambda = 0.0L;
  Complex trace_T;
  Real rho_trace = 0.0L;    // |T|^4 - 8 Re T^3 + 18 |T|^2 - 27
  Complex rho_product;      // prod_{a<b} (tau_a - tau_b)^2
  Real residual = 0.0L;     // |rho_trace - Re rho_product|
  Real noise_floor = 0.0L;  // rounding-level uncertainty of rho_trace
};

Real rho_trace_formula(Complex T);
Complex rho_product_formula(const Triple& taus);

/// Rounding-error scale of rho_trace_formula(T) for a trace obtained by
/// propagating over `steps` exponential steps. |rho| below it has no sign.
Real rho_noise_floor(Complex T, std::size_t steps);

DiscriminantValue evaluate_discriminant(const PeriodicCoefficients& c, Real lambda);

struct Sigma3Interval {
  Real lo = 0.0L;
  Real hi = 0.0L;
  Real rho_lo = 0.0L;  // rho at the endpoints (ideally ~0)
  Real rho_hi = 0.0L;
  Real rho_mid = 0.0L;
  // An endpoint pinned to the search interval rather than to a root of rho.
  bool open_left = false;
  bool open_right = false;
};

/// A zero of rho where it does not change sign (measure zero in Sigma_3).
struct TouchPoint {
  Real lambda = 0.0L;
  Real rho = 0.0L;
};

struct Sigma3Report {
  Real a = 0.0L;
  Real b = 0.0L;
  int scan_points = 0;
  Real tol = 0.0L;
  std::vector<Sigma3Interval> intervals;
  std::vector<TouchPoint> touches;
  std::vector<std::string> warnings;
};

/// Maximal closed intervals of [a, b] where rho <= 0, from a uniform sign scan
/// with every bracketed sign change bisected to width <= tol. Local minima of
/// rho between scan points are minimised as well, so dips narrower than the
/// scan step are still found when they have their own minimum.
Sigma3Report sigma3_intervals(const PeriodicCoefficients& c, Real a, Real b, int scan_points,
                              Real tol);

/// [-(10 + 10 kappa)^3, (10 + 10 kappa)^3]. A heuristic: no explicit radius
/// containing Sigma_3 is known.
std::pair<Real, Real> default_search_interval(const PeriodicCoefficients& c);

}  // namespace triband
