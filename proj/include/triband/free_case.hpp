#pragma once

#include <vector>

#include "triband/types.hpp"

namespace triband {

/// Closed forms for p = q = 0, evaluated on the principal cube-root branch.
struct FreeCaseValues {
  Complex lambda;
  Complex z;
  Triple taus0;       // e^{i z omega^{j-1}}
  Complex T0;         // sum of taus0
  Triple lyapunov0;   // cos(z omega^{j-1})
  Complex rho0;       // 64 sinh^2(sqrt3 z/2) sinh^2(sqrt3 omega z/2) sinh^2(sqrt3 omega^2 z/2)
};

FreeCaseValues free_case(Complex lambda);

/// (2 pi n + k)^3 for n_lo <= n <= n_hi, ascending.
std::vector<Real> free_eigenvalues(Real k, int n_lo, int n_hi);

}  // namespace triband
