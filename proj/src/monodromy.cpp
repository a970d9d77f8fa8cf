#include "triband/monodromy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "detail.hpp"
#include "triband/expm.hpp"

namespace triband {

SpectralParameter SpectralParameter::at(Complex lambda) {
  SpectralParameter s;
  s.lambda = lambda;
  Real arg = std::atan2(lambda.imag(), lambda.real());
  if (arg <= -kPi / 2) arg += 2 * kPi;
  s.z = std::polar(std::cbrt(std::abs(lambda)), arg / 3);
  s.z0 = (kI * s.z * omega_power(2)).real();
  return s;
}

SystemMatrices system_matrices(const SpectralParameter& param, double p, double q) {
  SystemMatrices m{Matrix3::Zero(), Matrix3::Zero()};
  m.P(0, 1) = 1.0L;
  m.P(1, 2) = 1.0L;
  m.P(2, 0) = -kI * param.lambda;
  m.Q(1, 0) = -static_cast<Real>(p);
  m.Q(2, 0) = kI * static_cast<Real>(q);
  m.Q(2, 1) = -static_cast<Real>(p);
  return m;
}

Real spectral_norm(const Matrix3& a) {
  Eigen::JacobiSVD<Matrix3> svd(a);
  return svd.singularValues()(0);
}

Matrix3 symplectic_form() {
  Matrix3 j = Matrix3::Zero();
  j(0, 2) = kI;
  j(1, 1) = -kI;
  j(2, 0) = kI;
  return j;
}

Real symplectic_residual(const Matrix3& m_lambda, const Matrix3& m_conjugate) {
  const Matrix3 j = symplectic_form();
  return spectral_norm(m_conjugate.adjoint() * j * m_lambda - j);
}

namespace detail {

void check_growth(const PeriodicCoefficients& c, const SpectralParameter& param) {
  if (param.z0 + c.kappa() > kMaxGrowthExponent) {
    throw std::range_error("monodromy growth e^(z0+kappa) exceeds double range at |lambda| = " +
                           std::to_string(static_cast<double>(std::abs(param.lambda))));
  }
}

void finish(MonodromyResult& r) {
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (!std::isfinite(r.M(i, j).real()) || !std::isfinite(r.M(i, j).imag())) {
        throw std::range_error("non-finite monodromy entry");
      }
    }
  }
  r.trace_T = r.M.trace();
  r.det_residual = std::abs(r.M.determinant() - Complex{1.0L, 0.0L});
  if (r.param.is_real()) r.symplectic_residual = symplectic_residual(r.M, r.M);
}

}  // namespace detail

MonodromyResult propagate(const PeriodicCoefficients& c, const SpectralParameter& param,
                          const PropagateOptions& opts) {
  if (opts.substeps < 1) throw std::invalid_argument("substeps must be positive");
  detail::check_growth(c, param);

  // Balance with D = diag(1, s, s^2), s a power of two near |z|; the balanced
  // P is then close to s times a unitary matrix, and undoing D is exact.
  const Real s = std::ldexp(
      1.0L, static_cast<int>(std::lround(std::log2(std::max(std::abs(param.z), 1.0L)))));
  const Real d[3] = {1.0L, s, s * s};
  const Real h = c.cell_width() / static_cast<Real>(opts.substeps);

  Matrix3 acc = Matrix3::Identity();
  Matrix3 step;
  bool have_step = false;
  double last_p = 0.0, last_q = 0.0;
  for (std::size_t i = 0; i < c.grid_size(); ++i) {
    const auto [p, q] = c.cell_values(i);
    if (!have_step || p != last_p || q != last_q) {
      const SystemMatrices sys = system_matrices(param, p, q);
      Matrix3 a = sys.P + sys.Q;
      for (int r = 0; r < 3; ++r) {
        for (int col = 0; col < 3; ++col) a(r, col) *= d[col] / d[r] * h;
      }
      step = expm(a);
      have_step = true;
      last_p = p;
      last_q = q;
    }
    for (int k = 0; k < opts.substeps; ++k) acc = step * acc;
  }

  MonodromyResult r;
  r.param = param;
  r.method = MonodromyMethod::ExponentialSteps;
  r.steps_or_terms = static_cast<int>(c.grid_size()) * opts.substeps;
  r.M = acc;
  for (int row = 0; row < 3; ++row) {
    for (int col = 0; col < 3; ++col) r.M(row, col) *= d[row] / d[col];
  }
  detail::finish(r);
  return r;
}

MonodromyResult propagate(const PeriodicCoefficients& c, Complex lambda,
                          const PropagateOptions& opts) {
  return propagate(c, SpectralParameter::at(lambda), opts);
}

MonodromyPair propagate_pair(const PeriodicCoefficients& c, Complex lambda,
                             const PropagateOptions& opts) {
  MonodromyPair pair{propagate(c, lambda, opts), propagate(c, std::conj(lambda), opts)};
  pair.at_lambda.symplectic_residual =
      symplectic_residual(pair.at_lambda.M, pair.at_conjugate.M);
  pair.at_conjugate.symplectic_residual =
      symplectic_residual(pair.at_conjugate.M, pair.at_lambda.M);
  return pair;
}

Complex char_poly_D(const MonodromyResult& m, Complex tau) {
  if (!m.param.is_real()) {
    throw std::invalid_argument("complex lambda needs the evaluation at conj(lambda)");
  }
  return -tau * tau * tau + tau * tau * m.trace_T - tau * std::conj(m.trace_T) + 1.0L;
}

Complex char_poly_D(const MonodromyResult& m, const MonodromyResult& m_conjugate,
                    Complex tau) {
  return -tau * tau * tau + tau * tau * m.trace_T - tau * std::conj(m_conjugate.trace_T) +
         1.0L;
}

Matrix3 standard_monodromy_conjugate(const MonodromyResult& m, double p_at_zero) {
  Matrix3 s = Matrix3::Identity();
  Matrix3 s_inv = Matrix3::Identity();
  s(2, 0) = -static_cast<Real>(p_at_zero);
  s_inv(2, 0) = static_cast<Real>(p_at_zero);
  return s * m.M * s_inv;
}

Matrix3 diagonalizing_transform(const SpectralParameter& param) {
  if (param.lambda == Complex{}) {
    throw std::invalid_argument("P(0) is nilpotent and has no diagonalising transform");
  }
  Matrix3 u;
  for (int r = 0; r < 3; ++r) {
    for (int col = 0; col < 3; ++col) u(r, col) = omega_power(r * col) / std::sqrt(3.0L);
  }
  const Complex iz = kI * param.z;
  Matrix3 zmat = Matrix3::Zero();
  zmat(0, 0) = 1.0L;
  zmat(1, 1) = iz;
  zmat(2, 2) = iz * iz;
  return zmat * u;
}

Matrix3 transformed_monodromy(const MonodromyResult& m) {
  const Matrix3 w = diagonalizing_transform(m.param);
  return w.partialPivLu().solve(m.M * w);
}

Matrix3 free_transformed_propagator(const SpectralParameter& param) {
  Matrix3 e = Matrix3::Zero();
  for (int j = 0; j < 3; ++j) e(j, j) = std::exp(kI * param.z * omega_power(j));
  return e;
}

}  // namespace triband
