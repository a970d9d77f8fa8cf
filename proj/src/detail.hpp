#pragma once

#include "triband/monodromy.hpp"

namespace triband::detail {

// Refuses evaluations whose growth factor would overflow exported doubles.
void check_growth(const PeriodicCoefficients& c, const SpectralParameter& param);

// Fills trace, determinant residual and (real lambda) the symplectic residual;
// throws std::range_error on non-finite entries.
void finish(MonodromyResult& r);

}  // namespace triband::detail
