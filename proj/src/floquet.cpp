#include "triband/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "triband/monodromy.hpp"
#include "triband/parallel.hpp"

namespace triband {

Real char_real_function(Real k, Complex T) {
  return (std::polar(1.0L, k / 2) * T).imag() - std::sin(1.5L * k);
}

namespace {

// F(k, w^3) / (1 + |T|) as a function of the real cube root w.
class FProbe {
 public:
  FProbe(const PeriodicCoefficients& c, Real k) : c_(c), k_(k) {}

  Real operator()(Real w) const { return at_lambda(w * w * w); }

  Real at_lambda(Real lambda) const {
    const MonodromyResult m = propagate(c_, SpectralParameter::at(lambda));
    return char_real_function(k_, m.trace_T) / (1.0L + std::abs(m.trace_T));
  }

 private:
  const PeriodicCoefficients& c_;
  Real k_;
};

struct Root {
  Real w = 0.0L;
  int multiplicity = 1;
};

Real refine_bracket(const FProbe& f, Real a, Real b, Real fa, Real fb, Real tol) {
  if (fa == 0.0L) return a;
  if (fb == 0.0L) return b;
  const Real rel = std::max(tol * 1e-3L, 16 * std::numeric_limits<Real>::epsilon());
  auto done = [rel](Real x, Real y) {
    return std::fabs(x - y) <= rel * std::max<Real>({1.0L, std::fabs(x), std::fabs(y)});
  };
  std::uintmax_t iters = 200;
  const auto [lo, hi] =
      boost::math::tools::toms748_solve([&](Real w) { return f(w); }, a, b, fa, fb, done, iters);
  return (lo + hi) / 2;
}

// Multiplicity (1 or 3) of a root where f changes sign. |F| grows like
// |lambda - root|^m, so |F| at offsets d and 2d differ by a factor 2^m. The
// offset is a small fraction of the local root spacing, measured in lambda
// because w = 0 is a critical point of w -> w^3.
int odd_multiplicity(const FProbe& f, Real w, Real step) {
  const Real lambda = w * w * w;
  const Real d = 1e-2L * std::max(3 * w * w * step, step * step * step);
  Real growth = 0.0L;
  for (Real side : {-1.0L, 1.0L}) {
    const Real f1 = std::fabs(f.at_lambda(lambda + side * d));
    const Real f2 = std::fabs(f.at_lambda(lambda + 2 * side * d));
    if (!(f1 > 0.0L && f2 > 0.0L)) return 1;
    growth += std::log2(f2 / f1) / 2;
  }
  return growth > 2.5L ? 3 : 1;
}

// Real zeros of f on [w_lo, w_hi] in ascending order.
std::vector<Root> scan_roots(const FProbe& f, Real w_lo, Real w_hi, int intervals, Real tol,
                             Real flat_tol) {
  const auto n = static_cast<std::size_t>(intervals) + 1;
  const Real step = (w_hi - w_lo) / static_cast<Real>(intervals);
  std::vector<Real> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = w_lo + step * static_cast<Real>(i);
  w.back() = w_hi;
  const std::vector<Real> fw = parallel_map(n, [&](std::size_t i) { return f(w[i]); });

  // Sign changes are bracketed directly. A same-sign local minimum of |f| may
  // hide a touching zero or a close pair of roots, so it is minimised too.
  enum class Kind { Exact, Bracket, Extremum };
  struct Task {
    std::size_t i;
    Kind kind;
  };
  auto sign = [&](std::size_t i) { return fw[i] < 0.0L ? -1 : (fw[i] > 0.0L ? 1 : 0); };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < n; ++i) {
    if (sign(i) == 0) tasks.push_back({i, Kind::Exact});
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (sign(i) * sign(i + 1) < 0) tasks.push_back({i, Kind::Bracket});
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const bool same = sign(i) != 0 && sign(i - 1) == sign(i) && sign(i + 1) == sign(i);
    if (same && std::fabs(fw[i]) <= std::fabs(fw[i - 1]) &&
        std::fabs(fw[i]) <= std::fabs(fw[i + 1])) {
      tasks.push_back({i, Kind::Extremum});
    }
  }

  const auto found = parallel_map(tasks.size(), [&](std::size_t t) {
    std::vector<Root> out;
    const std::size_t i = tasks[t].i;
    switch (tasks[t].kind) {
      case Kind::Exact: {
        // A sample that lands on a root; no sign change around it means a touch.
        const bool touch = i > 0 && i + 1 < n && sign(i - 1) * sign(i + 1) > 0;
        out.push_back({w[i], touch ? 2 : odd_multiplicity(f, w[i], step)});
        return out;
      }
      case Kind::Bracket: {
        const Real r = refine_bracket(f, w[i], w[i + 1], fw[i], fw[i + 1], tol);
        out.push_back({r, odd_multiplicity(f, r, step)});
        return out;
      }
      case Kind::Extremum:
        break;
    }
    const Real s = static_cast<Real>(sign(i));
    std::uintmax_t iters = 200;
    const auto [x, gx] = boost::math::tools::brent_find_minima(
        [&](Real v) { return s * f(v); }, w[i - 1], w[i + 1], 30, iters);
    if (gx < 0.0L) {
      const Real fx = s * gx;
      out.push_back({refine_bracket(f, w[i - 1], x, fw[i - 1], fx, tol), 1});
      out.push_back({refine_bracket(f, x, w[i + 1], fx, fw[i + 1], tol), 1});
    } else if (gx <= flat_tol) {
      out.push_back({x, 2});
    }
    return out;
  });

  std::vector<Root> roots;
  for (const auto& batch : found) roots.insert(roots.end(), batch.begin(), batch.end());
  std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) { return a.w < b.w; });

  // Neighbouring roots merge when they coincide to within 10 tol, or when F
  // stays below flat_tol between them: such a pair cannot be told apart from
  // a double root at working precision.
  std::vector<Root> merged;
  for (const Root& r : roots) {
    if (!merged.empty()) {
      Root& prev = merged.back();
      const Real la = prev.w * prev.w * prev.w;
      const Real lb = r.w * r.w * r.w;
      bool same = std::fabs(la - lb) <= 10 * tol * (1.0L + std::fabs(lb));
      if (!same && r.w - prev.w < step) same = std::fabs(f.at_lambda((la + lb) / 2)) <= flat_tol;
      if (same) {
        prev.w = std::cbrt((la + lb) / 2);
        prev.multiplicity = std::min(prev.multiplicity + r.multiplicity, 3);
        continue;
      }
    }
    merged.push_back(r);
  }
  return merged;
}

long window_of(Real w, Real k) {
  return static_cast<long>(std::floor((w - k + kPi) / (2 * kPi)));
}

void check_k(Real k) {
  if (!(k >= 0.0L && k < 2 * kPi)) throw std::invalid_argument("k must lie in [0, 2 pi)");
}

}  // namespace

FloquetSpectrum eigenvalues_at_k(const PeriodicCoefficients& c, Real k, int n_lo, int n_hi,
                                 Real tol, const FloquetOptions& opts) {
  check_k(k);
  if (n_lo > n_hi) throw std::invalid_argument("empty index range");
  if (!(tol > 0.0L)) throw std::invalid_argument("root tolerance must be positive");
  if (opts.samples_per_window < 4) throw std::invalid_argument("too few samples per window");

  FloquetSpectrum spec;
  spec.k = k;
  const FProbe f(c, k);

  std::vector<Root> roots;
  long first = 0;
  long last = 0;
  for (int margin = std::max(opts.margin, 1);; margin += 2) {
    first = static_cast<long>(n_lo) - margin;
    last = static_cast<long>(n_hi) + margin;
    const Real w_lo = 2 * kPi * static_cast<Real>(first) + k - kPi;
    const Real w_hi = 2 * kPi * static_cast<Real>(last) + k + kPi;
    roots = scan_roots(f, w_lo, w_hi,
                       static_cast<int>(last - first + 1) * opts.samples_per_window, tol,
                       opts.flat_tol);
    int in_first = 0;
    int in_last = 0;
    for (const Root& r : roots) {
      const long win = window_of(r.w, k);
      if (win == first) in_first += r.multiplicity;
      if (win == last) in_last += r.multiplicity;
    }
    if (in_first == 1 && in_last == 1) break;
    if (margin + 2 > opts.max_margin) {
      spec.diagnostics.push_back(
          "outer windows do not hold exactly one root each; indices may be shifted");
      spec.reliable = false;
      break;
    }
  }

  int total = 0;
  for (const Root& r : roots) total += r.multiplicity;
  if (total != last - first + 1) {
    spec.diagnostics.push_back("found " + std::to_string(total) + " roots in " +
                               std::to_string(last - first + 1) +
                               " windows; a root was missed or is spurious");
    spec.reliable = false;
  }

  long index = first;
  for (const Root& r : roots) {
    const Real lambda = r.w * r.w * r.w;
    const MonodromyResult m = propagate(c, SpectralParameter::at(lambda));
    for (int rep = 0; rep < r.multiplicity; ++rep, ++index) {
      if (index < n_lo || index > n_hi) continue;
      FloquetEigenvalue e;
      e.n = static_cast<int>(index);
      e.k = k;
      e.lambda = lambda;
      e.residual = std::fabs(char_real_function(k, m.trace_T)) / (1.0L + std::abs(m.trace_T));
      e.cube_root_gap = r.w - (2 * kPi * static_cast<Real>(index) + k);
      e.multiplicity = r.multiplicity;
      spec.eigenvalues.push_back(e);
    }
  }
  if (spec.eigenvalues.size() != static_cast<std::size_t>(n_hi - n_lo + 1)) {
    spec.diagnostics.push_back("returned " + std::to_string(spec.eigenvalues.size()) +
                               " eigenvalues for " + std::to_string(n_hi - n_lo + 1) +
                               " requested indices");
    spec.reliable = false;
  }
  return spec;
}

namespace {

// Zeros of D(e^{ik}, .) inside |lambda| = radius by the argument principle.
// The symmetric angle grid pairs every lambda with conj(lambda), which
// supplies conj(T(conj lambda)). The grid doubles until consecutive phase
// steps stay below pi/3.
int winding_count(const PeriodicCoefficients& c, Real k, Real radius, int& points,
                  std::vector<std::string>& diagnostics) {
  const Complex tau = std::polar(1.0L, k);
  std::vector<Complex> traces;
  std::size_t K = 256;
  constexpr std::size_t kMaxPoints = std::size_t{1} << 17;
  for (;;) {
    const std::size_t half = K / 2;
    std::vector<Complex> lambdas(K);
    for (std::size_t j = 0; j <= half; ++j) {
      lambdas[j] = std::polar(radius, 2 * kPi * static_cast<Real>(j) / static_cast<Real>(K));
    }
    lambdas[0] = {radius, 0.0L};
    lambdas[half] = {-radius, 0.0L};
    for (std::size_t j = 1; j < half; ++j) lambdas[K - j] = std::conj(lambdas[j]);

    // Reuse the previous (coarser) grid on even indices.
    std::vector<Complex> next(K);
    std::vector<std::size_t> todo;
    for (std::size_t j = 0; j < K; ++j) {
      if (!traces.empty() && j % 2 == 0) {
        next[j] = traces[j / 2];
      } else {
        todo.push_back(j);
      }
    }
    const auto fresh = parallel_map(todo.size(), [&](std::size_t t) {
      return propagate(c, SpectralParameter::at(lambdas[todo[t]])).trace_T;
    });
    for (std::size_t t = 0; t < todo.size(); ++t) next[todo[t]] = fresh[t];
    traces = std::move(next);

    std::vector<Complex> d(K);
    for (std::size_t j = 0; j < K; ++j) {
      const Complex t_conj_bar = std::conj(traces[(K - j) % K]);
      d[j] = -tau * tau * tau + tau * tau * traces[j] - tau * t_conj_bar + 1.0L;
    }
    Real total = 0.0L;
    Real worst = 0.0L;
    for (std::size_t j = 0; j < K; ++j) {
      const Real step = std::arg(d[(j + 1) % K] / d[j]);
      total += step;
      worst = std::max(worst, std::fabs(step));
    }
    if (worst < kPi / 3 || K >= kMaxPoints) {
      if (worst >= kPi / 3) diagnostics.push_back("contour phase steps remain large");
      points = static_cast<int>(K);
      return static_cast<int>(std::lround(total / (2 * kPi)));
    }
    K *= 2;
  }
}

}  // namespace

DiskCount count_in_disk(const PeriodicCoefficients& c, Real k, int N,
                        const FloquetOptions& opts) {
  check_k(k);
  if (N < 1) throw std::invalid_argument("N must be positive");

  DiskCount out;
  out.k = k;
  out.N = N;
  out.case_a = k < kPi / 2 || k > 3 * kPi / 2;
  const Real w_radius = out.case_a ? kPi * (2 * N + 1) : 2 * kPi * N;
  out.radius = w_radius * w_radius * w_radius;
  out.expected = out.case_a ? 2 * N + 1 : 2 * N;

  const FProbe f(c, k);
  const int intervals =
      static_cast<int>(std::ceil(2 * w_radius / (2 * kPi) * opts.samples_per_window));
  const std::vector<Root> roots =
      scan_roots(f, -w_radius, w_radius, intervals, 1e-12L, opts.flat_tol);
  for (const Root& r : roots) {
    if (std::fabs(r.w) < w_radius) out.real_root_count += r.multiplicity;
  }

  if (!roots.empty()) {
    auto near_seed = [&](Real w) {
      const Real n = std::round((w - k) / (2 * kPi));
      return std::fabs(w - (2 * kPi * n + k)) < kPi / 2;
    };
    out.asymptotic_regime = near_seed(roots.front().w) && near_seed(roots.back().w);
  }
  if (!out.asymptotic_regime) {
    out.diagnostics.push_back("N is below the asymptotic regime; the 2N+1 / 2N count "
                              "is not guaranteed here");
  }

  out.winding_count = winding_count(c, k, out.radius, out.contour_points, out.diagnostics);
  out.reliable = out.winding_count == out.real_root_count;
  if (!out.reliable) {
    out.diagnostics.push_back("real-root count " + std::to_string(out.real_root_count) +
                              " disagrees with winding count " +
                              std::to_string(out.winding_count));
  }
  return out;
}

}  // namespace triband
