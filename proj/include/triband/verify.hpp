#pragma once

#include <string>
#include <vector>

#include "triband/coeffs.hpp"
#include "triband/types.hpp"

namespace triband {

struct SuiteResult {
  std::string name;
  bool passed = true;
  int checks = 0;
  int failures = 0;
  // Largest observed value of (measured error / allowed error); <= 1 passes.
  Real worst_ratio = 0.0L;
  std::vector<std::string> notes;
};

struct VerifyOptions {
  int real_points = 200;
  int complex_points = 40;
  Real lambda_max = 500.0L;
  int discriminant_points = 500;
  int free_points = 200;
  Real free_lambda_max = 1e6L;
  int picard_points = 50;
  Real picard_lambda_max = 100.0L;
  Real det_tol = 1e-9L;
  Real symplectic_tol = 1e-8L;
  Real picard_tol = 1e-8L;
};

/// The invariant suites: identities, discriminant forms, trace bounds,
/// free-case oracles, Picard agreement and the disk count. Each suite runs
/// on a fixed deterministic set of spectral parameters.
std::vector<SuiteResult> run_verification(const PeriodicCoefficients& c,
                                          const VerifyOptions& opts = {});

/// Deterministic sample sets shared by the suites.
std::vector<Real> real_samples(int n, Real lo, Real hi);
/// Points filling the disk |lambda| <= r on a golden-angle spiral.
std::vector<Complex> disk_samples(int n, Real r);

}  // namespace triband
