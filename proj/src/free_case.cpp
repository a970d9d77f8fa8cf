#include "triband/free_case.hpp"

#include <stdexcept>

#include "triband/monodromy.hpp"

namespace triband {

FreeCaseValues free_case(Complex lambda) {
  const SpectralParameter param = SpectralParameter::at(lambda);
  FreeCaseValues v;
  v.lambda = lambda;
  v.z = param.z;
  v.T0 = 0.0L;
  v.rho0 = 64.0L;
  for (int j = 0; j < 3; ++j) {
    const Complex zj = param.z * omega_power(j);
    v.taus0[j] = std::exp(kI * zj);
    v.lyapunov0[j] = std::cos(zj);
    v.T0 += v.taus0[j];
    const Complex s = std::sinh(kSqrt3 * zj / 2.0L);
    v.rho0 *= s * s;
  }
  return v;
}

std::vector<Real> free_eigenvalues(Real k, int n_lo, int n_hi) {
  if (n_lo > n_hi) throw std::invalid_argument("empty index range");
  std::vector<Real> out;
  out.reserve(static_cast<std::size_t>(n_hi - n_lo + 1));
  for (int n = n_lo; n <= n_hi; ++n) {
    const Real w = 2 * kPi * n + k;
    out.push_back(w * w * w);
  }
  return out;
}

}  // namespace triband
