#pragma once

#include <array>
#include <complex>
#include <numbers>

#include <Eigen/Core>

namespace triband {

// The monodromy matrix has entries of size |z|^2 e^{z0} while its invariants
// (det, the J-form) are O(1); the extra 11 bits of the x87 format keep the
// identity residuals well inside 1e-9 for |lambda| in the hundreds.
using Real = long double;
using Complex = std::complex<Real>;
using Matrix3 = Eigen::Matrix<Complex, 3, 3>;
using Vector3 = Eigen::Matrix<Complex, 3, 1>;
using Triple = std::array<Complex, 3>;

inline constexpr Real kPi = std::numbers::pi_v<Real>;
inline constexpr Real kSqrt3 = std::numbers::sqrt3_v<Real>;

inline const Complex kI{0.0L, 1.0L};

/// Primitive cube root of unity e^{2 pi i / 3}.
inline const Complex kOmega{-0.5L, kSqrt3 / 2};

/// omega^j for j = 0, 1, 2.
inline Complex omega_power(int j) {
  switch (((j % 3) + 3) % 3) {
    case 0:
      return {1.0L, 0.0L};
    case 1:
      return kOmega;
    default:
      return std::conj(kOmega);
  }
}

/// Largest growth exponent accepted before an evaluation is refused; results
/// are exported as IEEE doubles, whose range ends near e^709.
inline constexpr Real kMaxGrowthExponent = 700.0L;

}  // namespace triband
