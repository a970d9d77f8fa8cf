#include "triband/bands.hpp"

#include <cmath>
#include <stdexcept>

#include "triband/discriminant.hpp"
#include "triband/monodromy.hpp"
#include "triband/parallel.hpp"

namespace triband {

std::string flags_to_string(unsigned flags) {
  std::string out;
  auto add = [&](unsigned bit, const char* name) {
    if (!(flags & bit)) return;
    if (!out.empty()) out += '|';
    out += name;
  };
  add(kNearBranchPoint, "NearBranchPoint");
  add(kDegenerate, "Degenerate");
  add(kOverflow, "Overflow");
  return out;
}

namespace {

struct Evaluated {
  std::optional<MultiplierSet> ms;
  Real rho = 0.0L;
  Real rho_tol = 0.0L;
  std::string error;
};

}  // namespace

std::vector<BandPoint> scan_real_axis(const PeriodicCoefficients& c, Real a, Real b, int points,
                                      const BandOptions& opts) {
  if (!(a < b)) throw std::invalid_argument("scan interval must satisfy a < b");
  if (points < 2) throw std::invalid_argument("scan needs at least 2 points");

  const auto n = static_cast<std::size_t>(points);
  std::vector<Real> grid(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = a + (b - a) * static_cast<Real>(i) / static_cast<Real>(n - 1);
  }
  grid.back() = b;

  std::vector<Evaluated> eval = parallel_map(n, [&](std::size_t i) {
    Evaluated e;
    try {
      const MonodromyResult m = propagate(c, SpectralParameter::at(grid[i]));
      e.ms = multipliers_from(m, opts.circle_tol);
      e.rho = rho_trace_formula(m.trace_T);
      const Real scale = std::pow(1.0L + std::abs(m.trace_T), 4);
      e.rho_tol = std::max(rho_noise_floor(m.trace_T, static_cast<std::size_t>(m.steps_or_terms)),
                           opts.degeneracy_tol * scale);
    } catch (const std::range_error& err) {
      e.error = err.what();
    }
    return e;
  });

  // Continue labels through the evaluated points only.
  std::vector<Real> ok_grid;
  std::vector<MultiplierSet> ok_sets;
  for (std::size_t i = 0; i < n; ++i) {
    if (eval[i].ms) {
      ok_grid.push_back(grid[i]);
      ok_sets.push_back(*eval[i].ms);
    }
  }
  const std::vector<MultiplierSet> labelled = continue_branches(ok_grid, ok_sets);

  std::vector<BandPoint> out(n);
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    BandPoint& bp = out[i];
    bp.lambda = grid[i];
    if (!eval[i].ms) {
      bp.flags = kOverflow;
      bp.error = eval[i].error;
      continue;
    }
    const MultiplierSet& ms = labelled[next++];
    bp.rho = eval[i].rho;
    bp.multiplicity = eval[i].rho <= 0.0L ? 3 : 1;
    for (int j = 0; j < 3; ++j) {
      const Complex tau = ms.taus[j];
      const Complex delta = ms.lyapunov[j];
      const bool unimodular = std::fabs(std::abs(tau) - 1.0L) <= opts.circle_tol;
      if (unimodular) {
        ++bp.on_circle_count;
        const Real d = std::clamp(delta.real(), -1.0L, 1.0L);
        bp.delta[j] = d;
        bp.lyapunov_real_branches.push_back(d);
      } else if (std::fabs(delta.imag()) <= opts.circle_tol * (1.0L + std::abs(delta))) {
        bp.delta[j] = delta.real();
      }
    }
    if (bp.on_circle_count != 1 && bp.on_circle_count != 3) bp.flags |= kDegenerate;
    if (std::fabs(eval[i].rho) <= eval[i].rho_tol || ms.near_branch_point ||
        (!(bp.flags & kDegenerate) && bp.on_circle_count != bp.multiplicity)) {
      bp.flags |= kNearBranchPoint;
    }
  }
  return out;
}

}  // namespace triband
