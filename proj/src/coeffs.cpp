#include "triband/coeffs.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace triband {

namespace {

void require_finite(std::span<const double> values, const char* name) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument(std::string("non-finite entry in ") + name);
    }
  }
}

}  // namespace

PeriodicCoefficients::PeriodicCoefficients(std::vector<double> p,
                                           std::vector<double> q)
    : p_(std::move(p)), q_(std::move(q)) {
  Real sum = 0.0L;
  for (std::size_t i = 0; i < p_.size(); ++i) {
    sum += std::fabs(static_cast<Real>(p_[i])) + std::fabs(static_cast<Real>(q_[i]));
  }
  kappa_ = sum / static_cast<Real>(p_.size());
}

PeriodicCoefficients PeriodicCoefficients::from_constants(double p0, double q0,
                                                          std::size_t grid_size) {
  if (grid_size == 0) throw std::invalid_argument("grid_size must be positive");
  if (!std::isfinite(p0) || !std::isfinite(q0)) {
    throw std::invalid_argument("non-finite constant coefficient");
  }
  return PeriodicCoefficients(std::vector<double>(grid_size, p0),
                              std::vector<double>(grid_size, q0));
}

PeriodicCoefficients PeriodicCoefficients::from_samples(
    std::span<const double> p_samples, std::span<const double> q_samples) {
  if (p_samples.size() != q_samples.size()) {
    throw std::invalid_argument("p and q sample counts differ");
  }
  if (p_samples.empty()) throw std::invalid_argument("empty coefficient samples");
  require_finite(p_samples, "p");
  require_finite(q_samples, "q");
  return PeriodicCoefficients({p_samples.begin(), p_samples.end()},
                              {q_samples.begin(), q_samples.end()});
}

std::pair<double, double> PeriodicCoefficients::cell_values(std::size_t i) const {
  if (i >= p_.size()) throw std::out_of_range("cell index out of range");
  return {p_[i], q_[i]};
}

PeriodicCoefficients refine(const PeriodicCoefficients& c, std::size_t factor) {
  if (factor == 0) throw std::invalid_argument("refinement factor must be positive");
  std::vector<double> p, q;
  p.reserve(c.grid_size() * factor);
  q.reserve(c.grid_size() * factor);
  for (std::size_t i = 0; i < c.grid_size(); ++i) {
    for (std::size_t r = 0; r < factor; ++r) {
      p.push_back(c.p_samples()[i]);
      q.push_back(c.q_samples()[i]);
    }
  }
  return PeriodicCoefficients::from_samples(p, q);
}

PeriodicCoefficients parse_coefficients_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("coefficient file is not JSON: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("coefficient file must hold an object");

  const bool has_const = doc.contains("p_const") || doc.contains("q_const");
  const bool has_samples = doc.contains("p") || doc.contains("q");
  if (has_const == has_samples) {
    throw std::invalid_argument(
        "coefficient file needs either p/q arrays or p_const/q_const, not both");
  }
  if (!doc.contains("grid_size") || !doc["grid_size"].is_number_integer() ||
      doc["grid_size"].get<long long>() <= 0) {
    throw std::invalid_argument("grid_size must be a positive integer");
  }
  const auto grid = static_cast<std::size_t>(doc["grid_size"].get<long long>());

  try {
    if (has_const) {
      if (!doc.contains("p_const") || !doc.contains("q_const")) {
        throw std::invalid_argument("both p_const and q_const are required");
      }
      return PeriodicCoefficients::from_constants(doc["p_const"].get<double>(),
                                                  doc["q_const"].get<double>(), grid);
    }
    if (!doc.contains("p") || !doc.contains("q")) {
      throw std::invalid_argument("both p and q arrays are required");
    }
    const auto p = doc["p"].get<std::vector<double>>();
    const auto q = doc["q"].get<std::vector<double>>();
    if (p.size() != grid || q.size() != grid) {
      throw std::invalid_argument("array lengths must equal grid_size");
    }
    return PeriodicCoefficients::from_samples(p, q);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad coefficient value: ") + e.what());
  }
}

PeriodicCoefficients load_coefficients(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open coefficient file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_coefficients_json(buf.str());
}

}  // namespace triband
