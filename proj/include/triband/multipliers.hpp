#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "triband/monodromy.hpp"
#include "triband/types.hpp"

namespace triband {

enum class CircleClass { AllOnCircle, OneOnCircle, Degenerate };

/// Multipliers tau_j (eigenvalues of M(1, lambda)), their Lyapunov values
/// Delta_j = (tau_j + 1/tau_j)/2 and quasimomenta k_j with tau_j = e^{i k_j}.
///
/// Entries are stored in branch order: taus[j] carries label j + 1, the label
/// whose free multiplier is e^{i z omega^j}.
struct MultiplierSet {
  Complex lambda;
  Triple taus{};
  std::array<int, 3> labels{1, 2, 3};
  std::optional<CircleClass> classification;  // real lambda only
  Triple lyapunov{};
  Triple quasimomenta{};
  // Set by continue_branches.
  bool near_branch_point = false;
  bool ambiguous_match = false;
};

inline constexpr Real kDefaultCircleTol = 1e-8L;

/// Roots of -tau^3 + T tau^2 - Tcb tau + 1, Tcb = conj(T(conj lambda)).
///
/// Companion-matrix eigenvalues followed by one guarded Newton step per root.
/// When the coefficients are large the outer roots come from the companion
/// matrices of the polynomial and of its reversal and the middle root from
/// tau1 tau2 tau3 = 1, so all three keep full relative accuracy.
Triple solve_multipliers(Complex T, Complex T_conj_bar);

/// Solves, labels by proximity to the free multipliers and fills Lyapunov
/// data; the single-argument form needs real lambda and also classifies.
MultiplierSet multipliers_from(const MonodromyResult& m, Real circle_tol = kDefaultCircleTol);
MultiplierSet multipliers_from(const MonodromyResult& m, const MonodromyResult& m_conjugate);

/// Throws std::invalid_argument for non-real lambda.
CircleClass classify_on_circle(const MultiplierSet& ms, Real tol = kDefaultCircleTol);

MultiplierSet lyapunov_and_quasimomenta(MultiplierSet ms);

/// Reorders taus so index j holds the multiplier closest, in log distance,
/// to e^{i z omega^j}.
MultiplierSet label_asymptotically(MultiplierSet ms);

struct ContinuationOptions {
  // Two multipliers closer than this (relative) mark a point next to a zero
  // of the discriminant; labels there are not asserted.
  Real branch_separation = 1e-4L;
  // Best and runner-up matchings within this relative gap are ambiguous.
  Real tie_tolerance = 1e-6L;
};

/// Sorts by lambda, anchors the labels at the largest lambda against the free
/// multipliers, and carries them down by nearest matching between neighbours.
/// Throws std::invalid_argument on size mismatch.
std::vector<MultiplierSet> continue_branches(std::span<const Real> grid,
                                             std::span<const MultiplierSet> sets,
                                             const ContinuationOptions& opts = {});

const char* to_string(CircleClass c);

}  // namespace triband
