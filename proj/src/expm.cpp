#include "triband/expm.hpp"

#include <cmath>

#include <Eigen/LU>

namespace triband {

namespace {

Real one_norm(const Matrix3& a) {
  Real best = 0.0L;
  for (int j = 0; j < 3; ++j) {
    Real col = 0.0L;
    for (int i = 0; i < 3; ++i) col += std::abs(a(i, j));
    best = std::max(best, col);
  }
  return best;
}

// c_j = (2m - j)! m! / ((2m)! j! (m - j)!) for m = 8.
constexpr Real kPade8[] = {
    1.0L,
    1.0L / 2.0L,
    7.0L / 60.0L,
    1.0L / 60.0L,
    1.0L / 624.0L,
    1.0L / 9360.0L,
    1.0L / 205920.0L,
    1.0L / 7207200.0L,
    1.0L / 518918400.0L,
};

}  // namespace

Matrix3 expm(const Matrix3& a) {
  const Real norm = one_norm(a);
  int squarings = 0;
  if (norm > 0.5L) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5L)));
  }
  const Matrix3 x = a * std::ldexp(1.0L, -squarings);

  const Matrix3 id = Matrix3::Identity();
  const Matrix3 x2 = x * x;
  const Matrix3 x4 = x2 * x2;
  const Matrix3 x6 = x4 * x2;
  const Matrix3 x8 = x4 * x4;
  const Matrix3 even = kPade8[0] * id + kPade8[2] * x2 + kPade8[4] * x4 +
                       kPade8[6] * x6 + kPade8[8] * x8;
  const Matrix3 odd =
      x * (kPade8[1] * id + kPade8[3] * x2 + kPade8[5] * x4 + kPade8[7] * x6);

  Matrix3 result = (even - odd).partialPivLu().solve(even + odd);
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

}  // namespace triband
