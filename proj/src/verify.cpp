#include "triband/verify.hpp"

#include <cmath>
#include <sstream>

#include "triband/discriminant.hpp"
#include "triband/floquet.hpp"
#include "triband/free_case.hpp"
#include "triband/monodromy.hpp"
#include "triband/multipliers.hpp"
#include "triband/parallel.hpp"

namespace triband {

std::vector<Real> real_samples(int n, Real lo, Real hi) {
  std::vector<Real> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    // Cell midpoints keep lambda = 0 out of even-sized sets.
    out[static_cast<std::size_t>(i)] = lo + (hi - lo) * (i + 0.5L) / n;
  }
  return out;
}

std::vector<Complex> disk_samples(int n, Real r) {
  const Real golden = kPi * (3.0L - std::sqrt(5.0L));
  std::vector<Complex> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] =
        std::polar(r * std::sqrt((i + 0.5L) / n), golden * static_cast<Real>(i) + 0.1L);
  }
  return out;
}

namespace {

class Tally {
 public:
  explicit Tally(std::string name) { r_.name = std::move(name); }

  void check(Real error, Real allowed, const std::string& what) {
    ++r_.checks;
    const Real ratio = allowed > 0.0L ? error / allowed : (error > 0.0L ? INFINITY : 0.0L);
    if (!(ratio <= 1.0L)) {
      ++r_.failures;
      if (r_.failures <= 5) {
        std::ostringstream os;
        os << what << ": " << static_cast<double>(error) << " > "
           << static_cast<double>(allowed);
        r_.notes.push_back(os.str());
      }
    }
    if (!(ratio <= r_.worst_ratio)) r_.worst_ratio = ratio;
  }

  void fail(const std::string& why) {
    ++r_.checks;
    ++r_.failures;
    r_.notes.push_back(why);
  }

  void note(const std::string& text) { r_.notes.push_back(text); }

  SuiteResult done() {
    r_.passed = r_.failures == 0;
    return std::move(r_);
  }

 private:
  SuiteResult r_;
};

std::string at(Complex lambda) {
  std::ostringstream os;
  os << "lambda=(" << static_cast<double>(lambda.real()) << ","
     << static_cast<double>(lambda.imag()) << ")";
  return os.str();
}

SuiteResult identities(const PeriodicCoefficients& c, const VerifyOptions& o) {
  Tally t("identities");
  const auto reals = real_samples(o.real_points, -o.lambda_max, o.lambda_max);
  const auto ms = parallel_map(reals.size(), [&](std::size_t i) { return propagate(c, reals[i]); });
  for (const auto& m : ms) {
    t.check(m.det_residual, o.det_tol, "det " + at(m.param.lambda));
    t.check(*m.symplectic_residual, o.symplectic_tol, "symplectic " + at(m.param.lambda));
  }
  const auto cs = disk_samples(o.complex_points, o.lambda_max);
  const auto pairs =
      parallel_map(cs.size(), [&](std::size_t i) { return propagate_pair(c, cs[i]); });
  for (const auto& p : pairs) {
    t.check(p.at_lambda.det_residual, o.det_tol, "det " + at(p.at_lambda.param.lambda));
    t.check(p.at_conjugate.det_residual, o.det_tol, "det " + at(p.at_conjugate.param.lambda));
    t.check(*p.at_lambda.symplectic_residual, o.symplectic_tol,
            "symplectic " + at(p.at_lambda.param.lambda));
  }
  return t.done();
}

SuiteResult discriminant(const PeriodicCoefficients& c, const VerifyOptions& o) {
  Tally t("discriminant");
  const auto reals = real_samples(o.discriminant_points, -o.lambda_max, o.lambda_max);
  const auto vs =
      parallel_map(reals.size(), [&](std::size_t i) { return evaluate_discriminant(c, reals[i]); });
  for (const auto& v : vs) {
    const Real scale = 1.0L + std::fabs(v.rho_trace);
    t.check(v.residual, 1e-6L * scale, "trace vs product " + at(v.lambda));
    t.check(std::fabs(v.rho_product.imag()), 1e-8L * scale, "Im product " + at(v.lambda));
  }
  return t.done();
}

SuiteResult bounds(const PeriodicCoefficients& c, const VerifyOptions& o) {
  Tally t("bounds");
  std::vector<Complex> pts;
  for (Real x : real_samples(o.real_points, -o.lambda_max, o.lambda_max)) pts.emplace_back(x, 0.0L);
  for (Complex z : disk_samples(o.complex_points, o.lambda_max)) pts.push_back(z);
  const Real kappa = c.kappa();
  const auto ms = parallel_map(pts.size(), [&](std::size_t i) { return propagate(c, pts[i]); });
  for (const auto& m : ms) {
    const SpectralParameter& sp = m.param;
    const Real growth = std::exp(sp.z0 + kappa);
    t.check(std::abs(m.trace_T), 3.0L * growth, "|T| " + at(sp.lambda));
    if (std::abs(sp.lambda) < 1.0L) continue;
    const Real absz = std::abs(sp.z);
    const Complex T0 = free_case(sp.lambda).T0;
    // The bounds are equalities at kappa = 0; allow rounding on top.
    const Real slack = 1e-12L * growth * (1.0L + absz);
    t.check(std::abs(m.trace_T - T0), 3.0L * kappa * growth / absz + slack,
            "|T - T0| " + at(sp.lambda));
    const Matrix3 diff = transformed_monodromy(m) - free_transformed_propagator(sp);
    t.check(spectral_norm(diff), kappa * growth / absz + slack,
            "transformed system " + at(sp.lambda));
  }
  return t.done();
}

SuiteResult free_oracles(const VerifyOptions& o) {
  Tally t("free-case oracle");
  const auto zero = PeriodicCoefficients::from_constants(0.0, 0.0, 1);
  std::vector<Complex> pts;
  for (Real x : real_samples(o.free_points / 2, -o.free_lambda_max, o.free_lambda_max)) {
    pts.emplace_back(x, 0.0L);
  }
  for (Complex z : disk_samples(o.free_points - o.free_points / 2, o.free_lambda_max)) {
    pts.push_back(z);
  }
  for (Complex lambda : pts) {
    const MonodromyResult m = propagate(zero, lambda);
    const FreeCaseValues f = free_case(lambda);
    t.check(std::abs(m.trace_T - f.T0), 1e-8L * std::abs(f.T0), "T vs T0 " + at(lambda));
    if (lambda.imag() == 0.0L) {
      const Real rho = rho_trace_formula(f.T0);
      t.check(std::abs(f.rho0 - rho), 1e-8L * std::abs(f.rho0), "rho0 " + at(lambda));
    }
  }
  for (Real k : {0.0L, 1.0L}) {
    const FloquetSpectrum s = eigenvalues_at_k(zero, k, -5, 5, 1e-12L);
    const std::vector<Real> exact = free_eigenvalues(k, -5, 5);
    if (s.eigenvalues.size() != exact.size()) {
      t.fail("free eigenvalue count at k=" + std::to_string(static_cast<double>(k)));
      continue;
    }
    for (std::size_t i = 0; i < exact.size(); ++i) {
      t.check(std::fabs(s.eigenvalues[i].lambda - exact[i]),
              1e-8L * std::max(std::fabs(exact[i]), 1e-6L), "free eigenvalue");
    }
  }
  return t.done();
}

SuiteResult picard(const PeriodicCoefficients& c, const VerifyOptions& o) {
  Tally t("Picard agreement");
  const auto pts = disk_samples(o.picard_points, o.picard_lambda_max);
  struct Outcome {
    Real error = 0.0L;
    Real scale = 1.0L;
    Real tail = 0.0L;
    std::string failure;
  };
  const auto out = parallel_map(pts.size(), [&](std::size_t i) {
    Outcome r;
    const SpectralParameter sp = SpectralParameter::at(pts[i]);
    try {
      const PicardSeries ps = picard_series(c, sp, 1e-1L * o.picard_tol);
      const MonodromyResult m = propagate(c, sp);
      r.error = (ps.result.M - m.M).cwiseAbs().maxCoeff();
      r.tail = ps.tail_bound;
    } catch (const TruncationError& e) {
      r.failure = e.what();
    }
    return r;
  });
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!out[i].failure.empty()) {
      t.fail("Picard truncation " + at(pts[i]) + ": " + out[i].failure);
      continue;
    }
    t.check(out[i].error, o.picard_tol, "entrywise difference " + at(pts[i]));
    t.check(out[i].tail, o.picard_tol, "certified tail " + at(pts[i]));
  }
  return t.done();
}

SuiteResult counting(const PeriodicCoefficients& c) {
  Tally t("disk count");
  for (Real k : {0.3L, 2.0L}) {
    // Smallest N >= 5 inside the asymptotic regime.
    bool counted = false;
    for (int N = 5; N <= 20 && !counted; ++N) {
      const DiskCount d = count_in_disk(c, k, N);
      if (!d.asymptotic_regime) continue;
      counted = true;
      const std::string tag = "k=" + std::to_string(static_cast<double>(k)) +
                              " N=" + std::to_string(N);
      t.check(std::abs(d.real_root_count - d.expected), 0.0L, "real roots " + tag);
      t.check(std::abs(d.winding_count - d.expected), 0.0L, "winding " + tag);
      if (N != 5) t.note(tag + " (N=5 outside the asymptotic regime)");
    }
    if (!counted) t.fail("no N <= 20 in the asymptotic regime");
  }
  return t.done();
}

}  // namespace

std::vector<SuiteResult> run_verification(const PeriodicCoefficients& c,
                                          const VerifyOptions& opts) {
  return {identities(c, opts), discriminant(c, opts), bounds(c, opts),
          free_oracles(opts),  picard(c, opts),       counting(c)};
}

}  // namespace triband
