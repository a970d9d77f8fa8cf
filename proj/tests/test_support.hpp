#pragma once

#include <cmath>

#include "oracles.hpp"
#include "triband/coeffs.hpp"
#include "triband/types.hpp"

namespace testing {

inline oracle::Mat to_mat(const triband::Matrix3& m) {
  oracle::Mat out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i][j] = m(i, j);
  return out;
}

inline triband::Real max_diff(const triband::Matrix3& a, const oracle::Mat& b) {
  triband::Real worst = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) worst = std::max(worst, std::abs(a(i, j) - b[i][j]));
  return worst;
}

// p = sin 2 pi t, q = 0.5 cos 2 pi t at cell midpoints.
inline triband::PeriodicCoefficients sampled_sin(std::size_t cells = 64, double scale = 1.0) {
  return triband::sample_midpoints([scale](double t) { return scale * std::sin(2 * M_PI * t); },
                                   [scale](double t) { return scale * 0.5 * std::cos(2 * M_PI * t); },
                                   cells);
}

}  // namespace testing
