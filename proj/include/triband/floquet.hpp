#pragma once

#include <string>
#include <vector>

#include "triband/coeffs.hpp"
#include "triband/types.hpp"

namespace triband {

/// F(k, lambda) = Im(e^{ik/2} T(lambda)) - sin(3k/2) for real lambda.
/// D(e^{ik}, lambda) = 2i e^{3ik/2} F(k, lambda), so the real zeros of F are
/// the eigenvalues of the fibre operator with quasimomentum k.
Real char_real_function(Real k, Complex T);

/// One eigenvalue lambda_n(k). Eigenvalues are numbered in ascending order
/// with multiplicity, anchored so that lambda_n(k) ~ (2 pi n + k)^3.
struct FloquetEigenvalue {
  int n = 0;
  Real k = 0.0L;
  Real lambda = 0.0L;
  // |F(k, lambda)| / (1 + |T(lambda)|); F itself grows like e^{z0}.
  Real residual = 0.0L;
  // cbrt(lambda) - (2 pi n + k); O(1/n) for large |n|.
  Real cube_root_gap = 0.0L;
  int multiplicity = 1;
};

struct FloquetOptions {
  // Samples per window of width 2 pi in the real cube-root variable.
  int samples_per_window = 24;
  // Extra windows scanned beyond the requested index range, at least.
  int margin = 2;
  int max_margin = 12;
  // |F| / (1 + |T|) below this counts as zero when deciding whether a dip
  // touches the axis or two close roots form a double root. The rounding
  // floor of that quantity is near 1e-18.
  Real flat_tol = 1e-15L;
};

struct FloquetSpectrum {
  Real k = 0.0L;
  std::vector<FloquetEigenvalue> eigenvalues;
  // Missed roots, inconsistent index anchoring, overflow.
  std::vector<std::string> diagnostics;
  bool reliable = true;
};

/// Eigenvalues lambda_n(k) for n_lo <= n <= n_hi. Roots are bracketed by a
/// sign scan in w = cbrt(lambda) over the windows [2 pi n + k - pi,
/// 2 pi n + k + pi] and refined with TOMS 748 to relative width well below
/// tol. Touching zeros, and root pairs that are closer than 10 tol or that
/// enclose only values of F below flat_tol, are reported twice with
/// multiplicity 2. A sign change where |F| grows like |lambda - root|^3 is a
/// triple root.
FloquetSpectrum eigenvalues_at_k(const PeriodicCoefficients& c, Real k, int n_lo, int n_hi,
                                 Real tol, const FloquetOptions& opts = {});

struct DiskCount {
  Real k = 0.0L;
  int N = 0;
  bool case_a = true;        // k in [0, pi/2) U (3pi/2, 2pi)
  Real radius = 0.0L;        // (pi(2N+1))^3 or (2 pi N)^3
  int expected = 0;          // 2N + 1 or 2N
  int real_root_count = 0;   // real zeros of F in (-radius, radius), with multiplicity
  int winding_count = 0;     // zeros of D(e^{ik}, .) inside |lambda| = radius
  int contour_points = 0;
  // Outermost roots sit within pi/2 of their seeds in the cube-root variable.
  bool asymptotic_regime = false;
  bool reliable = false;     // the two counts agree
  std::vector<std::string> diagnostics;
};

/// Counts zeros of D(e^{ik}, .) in the disk |lambda| < radius twice: real
/// roots of F with multiplicity, and the winding number of D along the circle.
DiskCount count_in_disk(const PeriodicCoefficients& c, Real k, int N,
                        const FloquetOptions& opts = {});

}  // namespace triband
