#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "doctest.h"
#include "oracles.hpp"
#include "test_support.hpp"
#include "triband/expm.hpp"
#include "triband/monodromy.hpp"

using namespace triband;

namespace {

Matrix3 sample_matrix(Complex lambda, double p, double q, Real h) {
  const SystemMatrices s = system_matrices(SpectralParameter::at(lambda), p, q);
  return (s.P + s.Q) * h;
}

}  // namespace

TEST_CASE("expm matches a Taylor series oracle") {
  for (Complex lambda : {Complex{0, 0}, Complex{5, 0}, Complex{-300, 40}, Complex{0, 1e4}}) {
    for (Real h : {1.0L, 1.0L / 64}) {
      const Matrix3 a = sample_matrix(lambda, 0.7, -1.3, h);
      const Matrix3 got = expm(a);
      const oracle::Mat want = oracle::taylor_expm(testing::to_mat(a));
      Real scale = 1;
      for (auto& row : want)
        for (auto& x : row) scale = std::max(scale, std::abs(x));
      CHECK(testing::max_diff(got, want) <= 1e-14L * scale);
    }
  }
}

TEST_CASE("expm agrees with Eigen's MatrixExponential") {
  using CM = Eigen::Matrix<std::complex<double>, 3, 3>;
  for (Complex lambda : {Complex{1, 0}, Complex{200, 0}, Complex{-50, 80}}) {
    const Matrix3 a = sample_matrix(lambda, -0.4, 2.0, 1.0L / 8);
    const CM ad = a.cast<std::complex<double>>();
    const CM want = ad.exp();
    const Matrix3 got = expm(a);
    const double scale = std::max(1.0, want.cwiseAbs().maxCoeff());
    CHECK((got.cast<std::complex<double>>() - want).cwiseAbs().maxCoeff() <= 1e-12 * scale);
  }
}

TEST_CASE("expm of zero and of a nilpotent shift") {
  CHECK((expm(Matrix3::Zero()) - Matrix3::Identity()).norm() == 0.0L);
  Matrix3 n = Matrix3::Zero();
  n(0, 1) = 1.0L;
  n(1, 2) = 1.0L;
  Matrix3 want = Matrix3::Identity();
  want(0, 1) = 1.0L;
  want(1, 2) = 1.0L;
  want(0, 2) = 0.5L;
  CHECK((expm(n) - want).cwiseAbs().maxCoeff() < 1e-18L);
}
