#pragma once

#include "triband/types.hpp"

namespace triband {

/// exp(A) by scaling and squaring around a diagonal [8/8] Pade core.
///
/// A is scaled by 2^-s until its 1-norm is at most 1/2; there the Pade
/// truncation error is below 1e-24, under long double rounding.
Matrix3 expm(const Matrix3& a);

}  // namespace triband
