#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "triband/coeffs.hpp"
#include "triband/types.hpp"

namespace triband::cli {

enum class Command { Scan, Eigs, Sigma3, Verify };
enum class Format { Csv, Json };

// Exit statuses of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitBadConfig = 2;
inline constexpr int kExitFileError = 3;
inline constexpr int kExitNumerical = 4;

struct RunConfig {
  Command command = Command::Scan;
  std::optional<std::string> coeffs_path;
  std::optional<double> p_const;
  std::optional<double> q_const;
  int grid = 1;
  std::optional<std::pair<Real, Real>> interval;
  std::optional<int> points;
  Real k = 0.0L;
  std::pair<int, int> n_range{-5, 5};
  std::optional<Real> tol;
  Real circle_tol = 1e-8L;
  std::optional<std::string> out_path;
  Format format = Format::Csv;
  // argv as given, echoed into output headers.
  std::vector<std::string> argv;
};

/// Throws std::invalid_argument when tolerances are not positive, an interval
/// is empty, or the coefficient source is missing or ambiguous.
void validate(const RunConfig& cfg);

PeriodicCoefficients load_coefficients(const RunConfig& cfg);

/// Runs one command, writing to cfg.out_path or `out`. Warnings and errors go
/// to `err`. Returns one of the kExit* statuses.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv and runs. Usage errors return kExitBadConfig.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Parse helpers for "A,B" and "A..B".
std::pair<Real, Real> parse_interval(const std::string& text);
std::pair<int, int> parse_n_range(const std::string& text);

}  // namespace triband::cli
