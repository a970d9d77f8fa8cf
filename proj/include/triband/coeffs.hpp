#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "triband/types.hpp"

namespace triband {

/// Real 1-periodic coefficients p, q of the operator, modelled as step
/// functions on N uniform cells of [0, 1).
///
/// Immutable after construction. kappa is the L1 norm of |p| + |q| over one
/// period, which for the step model is the cell average of |p_i| + |q_i|.
class PeriodicCoefficients {
 public:
  static PeriodicCoefficients from_constants(double p0, double q0,
                                             std::size_t grid_size);
  static PeriodicCoefficients from_samples(std::span<const double> p_samples,
                                           std::span<const double> q_samples);

  std::size_t grid_size() const { return p_.size(); }
  const std::vector<double>& p_samples() const { return p_; }
  const std::vector<double>& q_samples() const { return q_; }
  Real kappa() const { return kappa_; }
  Real cell_width() const { return 1.0L / static_cast<Real>(p_.size()); }

  /// Values of (p, q) on the cell [i/N, (i+1)/N). Throws std::out_of_range.
  std::pair<double, double> cell_values(std::size_t i) const;

  /// p(0), taken as the first sample.
  double p_at_zero() const { return p_.front(); }

  bool is_zero() const { return kappa_ == 0.0L; }

 private:
  PeriodicCoefficients(std::vector<double> p, std::vector<double> q);

  std::vector<double> p_;
  std::vector<double> q_;
  Real kappa_ = 0.0L;
};

/// Splits every cell into `factor` equal cells with the same values. The step
/// function, and hence every downstream quantity, is unchanged.
PeriodicCoefficients refine(const PeriodicCoefficients& c, std::size_t factor);

/// Samples smooth p, q at the midpoints of `grid_size` uniform cells.
template <typename P, typename Q>
PeriodicCoefficients sample_midpoints(P&& p, Q&& q, std::size_t grid_size) {
  std::vector<double> ps(grid_size), qs(grid_size);
  for (std::size_t i = 0; i < grid_size; ++i) {
    const double t = (static_cast<double>(i) + 0.5) / static_cast<double>(grid_size);
    ps[i] = p(t);
    qs[i] = q(t);
  }
  return PeriodicCoefficients::from_samples(ps, qs);
}

// Coefficient file, one of
//   {"grid_size": N, "p": [...], "q": [...]}
//   {"p_const": x, "q_const": y, "grid_size": N}
// Throws std::invalid_argument on malformed content and std::runtime_error on
// I/O failure.
PeriodicCoefficients parse_coefficients_json(std::string_view text);
PeriodicCoefficients load_coefficients(const std::filesystem::path& path);

}  // namespace triband
