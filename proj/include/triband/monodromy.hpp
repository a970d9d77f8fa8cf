#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "triband/coeffs.hpp"
#include "triband/types.hpp"

namespace triband {

/// lambda together with its cube root z on the sector arg z in (-pi/6, pi/2]
/// (arg lambda taken in (-pi/2, 3pi/2]) and z0 = Re(i z omega^2), the largest
/// of the three free growth rates Re(i z omega^j).
struct SpectralParameter {
  Complex lambda;
  Complex z;
  Real z0 = 0.0L;

  static SpectralParameter at(Complex lambda);
  static SpectralParameter at(Real lambda) { return at(Complex{lambda, 0.0L}); }

  bool is_real() const { return lambda.imag() == 0.0L; }
  SpectralParameter conjugate() const { return at(std::conj(lambda)); }
};

enum class MonodromyMethod { ExponentialSteps, PicardSeries };

/// M(1, lambda) for the first-order system in the rows (y, y', y'' + p y).
struct MonodromyResult {
  SpectralParameter param;
  Matrix3 M;
  Complex trace_T;
  Real det_residual = 0.0L;
  // Filled from M alone for real lambda; complex lambda needs M at conj(lambda),
  // see propagate_pair.
  std::optional<Real> symplectic_residual;
  MonodromyMethod method = MonodromyMethod::ExponentialSteps;
  int steps_or_terms = 0;
};

struct SystemMatrices {
  Matrix3 P;  // rows (0,1,0), (0,0,1), (-i lambda,0,0)
  Matrix3 Q;  // rows (0,0,0), (-p,0,0), (i q,-p,0)
};

SystemMatrices system_matrices(const SpectralParameter& param, double p, double q);

struct PropagateOptions {
  // Each coefficient cell is split into this many exponential steps.
  int substeps = 1;
};

/// Product of exact per-cell propagators exp((P + Q_i) h), later cells on the
/// left. Throws std::range_error when e^{z0 + kappa} would leave double range.
MonodromyResult propagate(const PeriodicCoefficients& c, const SpectralParameter& param,
                          const PropagateOptions& opts = {});
MonodromyResult propagate(const PeriodicCoefficients& c, Complex lambda,
                          const PropagateOptions& opts = {});

/// Evaluations at lambda and conj(lambda) with the symplectic residual
/// || M*(conj lambda) J M(lambda) - J || filled into both results.
struct MonodromyPair {
  MonodromyResult at_lambda;
  MonodromyResult at_conjugate;
};
MonodromyPair propagate_pair(const PeriodicCoefficients& c, Complex lambda,
                             const PropagateOptions& opts = {});

/// J with rows (0,0,i), (0,-i,0), (i,0,0).
Matrix3 symplectic_form();
Real symplectic_residual(const Matrix3& m_lambda, const Matrix3& m_conjugate);

/// Largest singular value.
Real spectral_norm(const Matrix3& a);

/// D(tau, lambda) = -tau^3 + tau^2 T(lambda) - tau conj(T(conj lambda)) + 1.
/// The one-result form requires real lambda (std::invalid_argument otherwise).
Complex char_poly_D(const MonodromyResult& m, Complex tau);
Complex char_poly_D(const MonodromyResult& m, const MonodromyResult& m_conjugate,
                    Complex tau);

/// S M S^{-1} with S rows (1,0,0), (0,1,0), (-p(0),0,1): the monodromy matrix
/// in the rows (y, y', y'') when p is absolutely continuous.
Matrix3 standard_monodromy_conjugate(const MonodromyResult& m, double p_at_zero);

/// Z U with Z = diag(1, iz, (iz)^2) and U the unitary 3x3 Fourier matrix; it
/// diagonalises P(lambda) to iz diag(1, omega, omega^2). Requires lambda != 0.
Matrix3 diagonalizing_transform(const SpectralParameter& param);

/// (Z U)^{-1} M(1, lambda) (Z U).
Matrix3 transformed_monodromy(const MonodromyResult& m);

/// diag(e^{iz}, e^{iz omega}, e^{iz omega^2}).
Matrix3 free_transformed_propagator(const SpectralParameter& param);

// ---------------------------------------------------------------------------
// Picard iteration M = sum_n M_n.

class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class PicardBasis { Original, Diagonalized };

/// Picard terms are accumulated in a working basis W where the free
/// propagator satisfies |exp(t A0)| <= e^{growth t}: W = Z U with growth = z0
/// when |z| >= 1, and W = identity with growth = |P| = max(1, |lambda|)
/// otherwise. Every term then obeys |M_n| <= e^{growth} kappa_work^n / n! with
/// kappa_work the integral of |W^{-1} Q W|.
struct PicardSeries {
  MonodromyResult result;
  PicardBasis basis = PicardBasis::Original;
  Real growth = 0.0L;
  Real kappa_work = 0.0L;
  // cond(W); converts working-basis errors into bounds on M.
  Real basis_condition = 1.0L;
  std::vector<Real> term_norms;   // |M_n(1)| in the working basis
  std::vector<Real> term_bounds;  // e^{growth} kappa_work^n / n!
  // Certified bound on |M - sum_{n<=N} M_n| in the original basis.
  Real tail_bound = 0.0L;
};

/// Throws TruncationError when more than max_terms terms would be needed.
PicardSeries picard_series(const PeriodicCoefficients& c, const SpectralParameter& param,
                           Real tol, int max_terms = 400);
MonodromyResult picard_monodromy(const PeriodicCoefficients& c,
                                 const SpectralParameter& param, Real tol);

}  // namespace triband
