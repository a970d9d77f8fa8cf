#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "triband/coeffs.hpp"
#include "triband/multipliers.hpp"
#include "triband/types.hpp"

namespace triband {

enum BandFlag : unsigned {
  kNearBranchPoint = 1u << 0,  // |rho| at the degeneracy tolerance, or circle count disagrees
  kDegenerate = 1u << 1,       // neither 1 nor 3 multipliers on the unit circle
  kOverflow = 1u << 2,         // propagation out of range; no data at this point
};

/// "NearBranchPoint|Degenerate", empty for no flags.
std::string flags_to_string(unsigned flags);

struct BandPoint {
  Real lambda = 0.0L;
  std::optional<Real> rho;
  int multiplicity = 0;     // 1 or 3; 0 on overflow
  int on_circle_count = 0;
  // Delta_j for branch labels 1..3; empty when Delta_j is not real.
  std::array<std::optional<Real>, 3> delta;
  // The Delta_j in [-1, 1], that is, the branches whose multiplier is unimodular.
  std::vector<Real> lyapunov_real_branches;
  unsigned flags = 0;
  std::string error;  // reason for kOverflow
};

struct BandOptions {
  Real circle_tol = kDefaultCircleTol;
  // |rho| <= max(noise floor, degeneracy_tol (1 + |T|)^4) flags a branch point.
  Real degeneracy_tol = 1e-10L;
};

/// Uniform grid of `points` values on [a, b]. Points are evaluated in
/// parallel; labels are continued along the grid from the right end. An
/// overflow at one point is recorded in that row and the scan goes on.
std::vector<BandPoint> scan_real_axis(const PeriodicCoefficients& c, Real a, Real b, int points,
                                      const BandOptions& opts = {});

}  // namespace triband
