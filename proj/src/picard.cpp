#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/LU>

#include "detail.hpp"
#include "triband/monodromy.hpp"

namespace triband {

namespace {

// Coefficients of a power series in a bookkeeping parameter eps counting the
// number of Q factors, truncated after eps^order.
using Graded = std::vector<Matrix3>;

Real one_norm(const Matrix3& a) {
  Real best = 0.0L;
  for (int j = 0; j < 3; ++j) {
    Real col = 0.0L;
    for (int i = 0; i < 3; ++i) col += std::abs(a(i, j));
    best = std::max(best, col);
  }
  return best;
}

Graded multiply(const Graded& a, const Graded& b) {
  Graded out(a.size(), Matrix3::Zero());
  for (std::size_t m = 0; m < a.size(); ++m) {
    for (std::size_t k = 0; k <= m; ++k) out[m].noalias() += a[k] * b[m - k];
  }
  return out;
}

// exp(h (a0 + eps a1)) on one cell. Entry m is the exact iterated integral
// with m factors of a1, i.e. the cell's contribution to the m-th Picard term.
Graded graded_exp(const Matrix3& a0, const Matrix3& a1, Real h, int order) {
  const Real norm = h * (one_norm(a0) + one_norm(a1));
  const int squarings = norm > 0.5L ? static_cast<int>(std::ceil(std::log2(norm / 0.5L))) : 0;
  const Real scale = h * std::ldexp(1.0L, -squarings);
  const Matrix3 y0 = a0 * scale;
  const Matrix3 y1 = a1 * scale;

  // Horner for sum_k Y^k / k!; at norm <= 1/2, 20 terms leave < 1e-25.
  constexpr int kTaylorTerms = 20;
  Graded r(order + 1, Matrix3::Zero());
  r[0] = Matrix3::Identity();
  Graded t(order + 1);
  for (int k = kTaylorTerms; k >= 1; --k) {
    for (int m = 0; m <= order; ++m) {
      t[m] = y0 * r[m];
      if (m > 0) t[m].noalias() += y1 * r[m - 1];
    }
    for (int m = 0; m <= order; ++m) r[m] = t[m] / static_cast<Real>(k);
    r[0] += Matrix3::Identity();
  }
  for (int i = 0; i < squarings; ++i) r = multiply(r, r);
  return r;
}

// log(kappa^n / n!)
Real log_term(Real kappa, int n) {
  return static_cast<Real>(n) * std::log(kappa) - std::lgamma(static_cast<Real>(n) + 1.0L);
}

// Upper bound on sum_{m > n} kappa^m / m!.
Real tail_sum(Real kappa, int n) {
  if (kappa == 0.0L) return 0.0L;
  const Real ratio = kappa / static_cast<Real>(n + 2);
  if (ratio >= 1.0L) return std::numeric_limits<Real>::infinity();
  return std::exp(log_term(kappa, n + 1)) / (1.0L - ratio);
}

}  // namespace

PicardSeries picard_series(const PeriodicCoefficients& c, const SpectralParameter& param,
                           Real tol, int max_terms) {
  if (!(tol > 0.0L)) throw std::invalid_argument("Picard tolerance must be positive");
  detail::check_growth(c, param);

  PicardSeries out;
  Matrix3 w = Matrix3::Identity();
  Matrix3 w_inv = Matrix3::Identity();
  Matrix3 a0;
  if (std::abs(param.z) >= 1.0L) {
    out.basis = PicardBasis::Diagonalized;
    w = diagonalizing_transform(param);
    w_inv = w.inverse();
    a0 = Matrix3::Zero();
    for (int j = 0; j < 3; ++j) a0(j, j) = kI * param.z * omega_power(j);
    out.growth = param.z0;
    out.basis_condition = spectral_norm(w) * spectral_norm(w_inv);
  } else {
    out.basis = PicardBasis::Original;
    a0 = system_matrices(param, 0.0, 0.0).P;
    out.growth = std::max(1.0L, std::abs(param.lambda));
    out.basis_condition = 1.0L;
  }

  const Real h = c.cell_width();
  std::vector<Matrix3> a1(c.grid_size());
  Real kappa = 0.0L;
  for (std::size_t i = 0; i < c.grid_size(); ++i) {
    const auto [p, q] = c.cell_values(i);
    a1[i] = w_inv * system_matrices(param, p, q).Q * w;
    kappa += h * spectral_norm(a1[i]);
  }
  out.kappa_work = kappa;

  const Real prefactor = out.basis_condition * std::exp(out.growth);
  int order = 0;
  while (prefactor * tail_sum(kappa, order) >= tol) {
    if (++order > max_terms) {
      throw TruncationError("Picard series needs more than " + std::to_string(max_terms) +
                            " terms for tol " + std::to_string(static_cast<double>(tol)) +
                            " (kappa_work = " + std::to_string(static_cast<double>(kappa)) +
                            ")");
    }
  }
  out.tail_bound = prefactor * tail_sum(kappa, order);

  std::map<std::pair<double, double>, Graded> cache;
  Graded terms(order + 1, Matrix3::Zero());
  terms[0] = Matrix3::Identity();
  for (std::size_t i = 0; i < c.grid_size(); ++i) {
    const auto key = c.cell_values(i);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, graded_exp(a0, a1[i], h, order)).first;
    const Graded& cell = it->second;
    for (int n = order; n >= 0; --n) {
      Matrix3 next = Matrix3::Zero();
      for (int m = 0; m <= n; ++m) next.noalias() += cell[m] * terms[n - m];
      terms[n] = next;
    }
  }

  Matrix3 sum = Matrix3::Zero();
  for (int n = 0; n <= order; ++n) {
    sum += terms[n];
    out.term_norms.push_back(spectral_norm(terms[n]));
    out.term_bounds.push_back(kappa == 0.0L ? (n == 0 ? std::exp(out.growth) : 0.0L)
                                            : std::exp(out.growth + log_term(kappa, n)));
  }

  MonodromyResult& r = out.result;
  r.param = param;
  r.method = MonodromyMethod::PicardSeries;
  r.steps_or_terms = order + 1;
  r.M = w * sum * w_inv;
  detail::finish(r);
  return out;
}

MonodromyResult picard_monodromy(const PeriodicCoefficients& c,
                                 const SpectralParameter& param, Real tol) {
  return picard_series(c, param, tol).result;
}

}  // namespace triband
