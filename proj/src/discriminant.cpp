#include "triband/discriminant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>

#include "triband/monodromy.hpp"
#include "triband/multipliers.hpp"
#include "triband/parallel.hpp"

namespace triband {

Real rho_trace_formula(Complex T) {
  const Real m2 = std::norm(T);
  return m2 * m2 - 8.0L * (T * T * T).real() + 18.0L * m2 - 27.0L;
}

Complex rho_product_formula(const Triple& taus) {
  const Complex d12 = taus[0] - taus[1];
  const Complex d13 = taus[0] - taus[2];
  const Complex d23 = taus[1] - taus[2];
  const Complex prod = d12 * d13 * d23;
  return prod * prod;
}

Real rho_noise_floor(Complex T, std::size_t steps) {
  const Real t = std::abs(T);
  const Real eps = std::numeric_limits<Real>::epsilon();
  const Real formula = t * t * t * t + 8.0L * t * t * t + 18.0L * t * t + 27.0L;
  const Real slope = 4.0L * t * t * t + 24.0L * t * t + 36.0L * t;
  return eps * (64.0L * formula + 16.0L * static_cast<Real>(steps) * (1.0L + t) * slope);
}

DiscriminantValue evaluate_discriminant(const PeriodicCoefficients& c, Real lambda) {
  const MonodromyResult m = propagate(c, SpectralParameter::at(lambda));
  const MultiplierSet ms = multipliers_from(m);
  DiscriminantValue v;
  v.lambda = lambda;
  v.trace_T = m.trace_T;
  v.rho_trace = rho_trace_formula(m.trace_T);
  v.rho_product = rho_product_formula(ms.taus);
  v.residual = std::fabs(v.rho_trace - v.rho_product.real());
  v.noise_floor = rho_noise_floor(m.trace_T, static_cast<std::size_t>(m.steps_or_terms));
  return v;
}

std::pair<Real, Real> default_search_interval(const PeriodicCoefficients& c) {
  const Real r = 10.0L + 10.0L * c.kappa();
  return {-r * r * r, r * r * r};
}

namespace {

struct Sample {
  Real lambda = 0.0L;
  Real rho = 0.0L;
  Real noise = 0.0L;
  int sign = 0;  // +1, -1, or 0 inside the noise floor
  bool ok = true;
};

class RhoProbe {
 public:
  explicit RhoProbe(const PeriodicCoefficients& c) : c_(c) {}

  Sample operator()(Real lambda) const {
    Sample s;
    s.lambda = lambda;
    try {
      const MonodromyResult m = propagate(c_, SpectralParameter::at(lambda));
      s.rho = rho_trace_formula(m.trace_T);
      s.noise = rho_noise_floor(m.trace_T, c_.grid_size());
      s.sign = s.rho > s.noise ? 1 : (s.rho < -s.noise ? -1 : 0);
    } catch (const std::range_error&) {
      s.ok = false;
    }
    return s;
  }

 private:
  const PeriodicCoefficients& c_;
};

// Shrinks [inside, outside] around the point where rho stops being positive;
// `outside` has rho > noise, `inside` does not.
Real bisect_edge(const RhoProbe& probe, Real inside, Real outside, Real tol) {
  while (std::fabs(outside - inside) > tol) {
    const Real mid = (inside + outside) / 2;
    if (mid == inside || mid == outside) break;
    if (probe(mid).sign > 0) {
      outside = mid;
    } else {
      inside = mid;
    }
  }
  return (inside + outside) / 2;
}

Sample minimise(const RhoProbe& probe, Real lo, Real hi) {
  std::uintmax_t iters = 200;
  const auto [x, fx] = boost::math::tools::brent_find_minima(
      [&](Real l) { return probe(l).rho; }, lo, hi, 30, iters);
  (void)fx;
  return probe(x);
}

}  // namespace

Sigma3Report sigma3_intervals(const PeriodicCoefficients& c, Real a, Real b, int scan_points,
                              Real tol) {
  if (!(a < b)) throw std::invalid_argument("sigma3 search needs a < b");
  if (scan_points < 2) throw std::invalid_argument("sigma3 search needs >= 2 scan points");
  if (!(tol > 0.0L)) throw std::invalid_argument("sigma3 tolerance must be positive");

  Sigma3Report report;
  report.a = a;
  report.b = b;
  report.scan_points = scan_points;
  report.tol = tol;

  const RhoProbe probe(c);
  const Real step = (b - a) / static_cast<Real>(scan_points - 1);
  const auto n = static_cast<std::size_t>(scan_points);
  std::vector<Sample> grid = parallel_map(n, [&](std::size_t i) {
    const Real lambda = i + 1 == n ? b : a + step * static_cast<Real>(i);
    return probe(lambda);
  });

  std::size_t failed = 0;
  for (const Sample& s : grid) failed += s.ok ? 0 : 1;
  if (failed > 0) {
    report.warnings.push_back(std::to_string(failed) +
                              " scan points overflowed and were skipped");
    std::erase_if(grid, [](const Sample& s) { return !s.ok; });
  }
  if (grid.empty()) return report;

  // Runs of non-positive samples: genuine intervals or touching zeros.
  for (std::size_t i = 0; i < grid.size();) {
    if (grid[i].sign > 0) {
      ++i;
      continue;
    }
    std::size_t j = i;
    bool negative = false;
    std::size_t best = i;
    while (j < grid.size() && grid[j].sign <= 0) {
      negative = negative || grid[j].sign < 0;
      if (std::fabs(grid[j].rho) < std::fabs(grid[best].rho)) best = j;
      ++j;
    }
    const std::size_t last = j - 1;
    if (negative) {
      Sigma3Interval iv;
      iv.open_left = i == 0;
      iv.open_right = j == grid.size();
      iv.lo = iv.open_left ? grid[i].lambda
                           : bisect_edge(probe, grid[i].lambda, grid[i - 1].lambda, tol);
      iv.hi = iv.open_right ? grid[last].lambda
                            : bisect_edge(probe, grid[last].lambda, grid[j].lambda, tol);
      iv.rho_lo = probe(iv.lo).rho;
      iv.rho_hi = probe(iv.hi).rho;
      iv.rho_mid = probe((iv.lo + iv.hi) / 2).rho;
      if (iv.open_left || iv.open_right) {
        report.warnings.push_back("a Sigma_3 interval reaches the edge of the search range");
      }
      report.intervals.push_back(iv);
    } else {
      const Real lo = i > 0 ? grid[i - 1].lambda : grid[i].lambda;
      const Real hi = j < grid.size() ? grid[j].lambda : grid[last].lambda;
      Sample m = lo < hi ? minimise(probe, lo, hi) : grid[best];
      if (std::fabs(m.rho) > std::fabs(grid[best].rho)) m = grid[best];
      report.touches.push_back({m.lambda, m.rho});
    }
    i = j;
  }

  // Interior local minima of positive rho may hide a dip between samples.
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const Sample& s = grid[i];
    if (s.sign <= 0 || grid[i - 1].sign <= 0 || grid[i + 1].sign <= 0) continue;
    if (s.rho > grid[i - 1].rho || s.rho > grid[i + 1].rho) continue;
    const Sample m = minimise(probe, grid[i - 1].lambda, grid[i + 1].lambda);
    if (m.sign > 0) continue;
    if (m.sign == 0) {
      report.touches.push_back({m.lambda, m.rho});
      continue;
    }
    Sigma3Interval iv;
    iv.lo = bisect_edge(probe, m.lambda, grid[i - 1].lambda, tol);
    iv.hi = bisect_edge(probe, m.lambda, grid[i + 1].lambda, tol);
    iv.rho_lo = probe(iv.lo).rho;
    iv.rho_hi = probe(iv.hi).rho;
    iv.rho_mid = probe((iv.lo + iv.hi) / 2).rho;
    report.intervals.push_back(iv);
  }

  std::sort(report.intervals.begin(), report.intervals.end(),
            [](const Sigma3Interval& x, const Sigma3Interval& y) { return x.lo < y.lo; });
  std::sort(report.touches.begin(), report.touches.end(),
            [](const TouchPoint& x, const TouchPoint& y) { return x.lambda < y.lambda; });
  return report;
}

}  // namespace triband
