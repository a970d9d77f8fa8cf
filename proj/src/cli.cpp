#include "triband/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <regex>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "triband/bands.hpp"
#include "triband/discriminant.hpp"
#include "triband/floquet.hpp"
#include "triband/verify.hpp"

namespace triband::cli {

using json = nlohmann::ordered_json;

namespace {

constexpr Real kDefaultRootTol = 1e-10L;
constexpr Real kDefaultSigma3Tol = 1e-10L;
constexpr Real kDefaultDegeneracyTol = 1e-10L;
constexpr int kDefaultScanPoints = 201;
constexpr int kDefaultSigma3Points = 4001;

const char* command_name(Command c) {
  switch (c) {
    case Command::Scan:
      return "scan";
    case Command::Eigs:
      return "eigs";
    case Command::Sigma3:
      return "sigma3";
    case Command::Verify:
      return "verify";
  }
  return "?";
}

// Long double keeps rho finite far beyond double range, so print it as such.
std::string num(Real x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17Lg", x);
  return buf;
}

std::string num(const std::optional<Real>& x) { return x ? num(*x) : std::string{}; }

// Values outside double range become strings; JSON numbers cannot hold them.
json jnum(Real x) {
  if (std::isfinite(x) && std::fabs(x) > std::numeric_limits<double>::max()) return num(x);
  return static_cast<double>(x);
}

json jnum(const std::optional<Real>& x) { return x ? jnum(*x) : json(nullptr); }

std::string echo(const RunConfig& cfg) {
  std::string s;
  for (const auto& a : cfg.argv) {
    if (!s.empty()) s += ' ';
    s += a;
  }
  return s;
}

json config_json(const RunConfig& cfg, const PeriodicCoefficients& c) {
  json j;
  j["command"] = command_name(cfg.command);
  j["argv"] = cfg.argv;
  if (cfg.coeffs_path) j["coeffs"] = *cfg.coeffs_path;
  j["grid_size"] = c.grid_size();
  j["kappa"] = static_cast<double>(c.kappa());
  return j;
}

// Header comment lines for CSV output.
void csv_header(std::ostream& os, const RunConfig& cfg, const PeriodicCoefficients& c,
                const std::vector<std::pair<std::string, std::string>>& extra) {
  os << "# triband " << command_name(cfg.command) << '\n';
  os << "# argv: " << echo(cfg) << '\n';
  os << "# grid_size: " << c.grid_size() << '\n';
  os << "# kappa: " << num(c.kappa()) << '\n';
  for (const auto& [key, value] : extra) os << "# " << key << ": " << value << '\n';
}

struct Output {
  int warnings = 0;
  bool failed = false;
};

Output do_scan(const RunConfig& cfg, const PeriodicCoefficients& c, std::ostream& os) {
  if (!cfg.interval) throw std::invalid_argument("scan needs --interval A,B");
  const auto [a, b] = *cfg.interval;
  const int points = cfg.points.value_or(kDefaultScanPoints);
  BandOptions opts;
  opts.circle_tol = cfg.circle_tol;
  opts.degeneracy_tol = cfg.tol.value_or(kDefaultDegeneracyTol);
  const std::vector<BandPoint> rows = scan_real_axis(c, a, b, points, opts);

  Output result;
  for (const auto& r : rows) result.warnings += (r.flags & kOverflow) ? 1 : 0;

  if (cfg.format == Format::Csv) {
    csv_header(os, cfg, c,
               {{"interval", num(a) + "," + num(b)},
                {"points", std::to_string(points)},
                {"circle_tol", num(opts.circle_tol)},
                {"degeneracy_tol", num(opts.degeneracy_tol)},
                {"overflow_points", std::to_string(result.warnings)}});
    os << "lambda,rho,multiplicity,delta1,delta2,delta3,flags\n";
    for (const auto& r : rows) {
      os << num(r.lambda) << ',' << num(r.rho) << ',';
      if (r.multiplicity) os << r.multiplicity;
      for (const auto& d : r.delta) os << ',' << num(d);
      os << ',' << flags_to_string(r.flags) << '\n';
    }
  } else {
    json j = config_json(cfg, c);
    j["interval"] = {static_cast<double>(a), static_cast<double>(b)};
    j["points"] = points;
    j["circle_tol"] = static_cast<double>(opts.circle_tol);
    j["degeneracy_tol"] = static_cast<double>(opts.degeneracy_tol);
    j["warnings"] = result.warnings;
    json arr = json::array();
    for (const auto& r : rows) {
      json p;
      p["lambda"] = static_cast<double>(r.lambda);
      p["rho"] = jnum(r.rho);
      p["multiplicity"] = r.multiplicity ? json(r.multiplicity) : json(nullptr);
      p["on_circle_count"] = r.on_circle_count;
      p["delta"] = {jnum(r.delta[0]), jnum(r.delta[1]), jnum(r.delta[2])};
      json real = json::array();
      for (Real d : r.lyapunov_real_branches) real.push_back(static_cast<double>(d));
      p["lyapunov_real_branches"] = real;
      p["flags"] = flags_to_string(r.flags);
      if (!r.error.empty()) p["error"] = r.error;
      arr.push_back(p);
    }
    j["rows"] = arr;
    os << j.dump(2) << '\n';
  }
  return result;
}

Output do_eigs(const RunConfig& cfg, const PeriodicCoefficients& c, std::ostream& os) {
  const Real tol = cfg.tol.value_or(kDefaultRootTol);
  const FloquetSpectrum s = eigenvalues_at_k(c, cfg.k, cfg.n_range.first, cfg.n_range.second, tol);
  Output result;
  result.warnings = static_cast<int>(s.diagnostics.size());

  if (cfg.format == Format::Csv) {
    std::vector<std::pair<std::string, std::string>> extra{
        {"k", num(cfg.k)},
        {"n_range", std::to_string(cfg.n_range.first) + ".." + std::to_string(cfg.n_range.second)},
        {"tol", num(tol)},
        {"reliable", s.reliable ? "true" : "false"}};
    for (const auto& d : s.diagnostics) extra.emplace_back("diagnostic", d);
    csv_header(os, cfg, c, extra);
    os << "n,k,lambda,residual,cube_root_gap,multiplicity\n";
    for (const auto& e : s.eigenvalues) {
      os << e.n << ',' << num(e.k) << ',' << num(e.lambda) << ',' << num(e.residual) << ','
         << num(e.cube_root_gap) << ',' << e.multiplicity << '\n';
    }
  } else {
    json j = config_json(cfg, c);
    j["k"] = static_cast<double>(cfg.k);
    j["n_range"] = {cfg.n_range.first, cfg.n_range.second};
    j["tol"] = static_cast<double>(tol);
    j["reliable"] = s.reliable;
    j["diagnostics"] = s.diagnostics;
    json arr = json::array();
    for (const auto& e : s.eigenvalues) {
      arr.push_back({{"n", e.n},
                     {"k", static_cast<double>(e.k)},
                     {"lambda", static_cast<double>(e.lambda)},
                     {"residual", static_cast<double>(e.residual)},
                     {"cube_root_gap", static_cast<double>(e.cube_root_gap)},
                     {"multiplicity", e.multiplicity}});
    }
    j["eigenvalues"] = arr;
    os << j.dump(2) << '\n';
  }
  return result;
}

Output do_sigma3(const RunConfig& cfg, const PeriodicCoefficients& c, std::ostream& os) {
  const auto [a, b] = cfg.interval.value_or(default_search_interval(c));
  const int points = cfg.points.value_or(kDefaultSigma3Points);
  const Real tol = cfg.tol.value_or(kDefaultSigma3Tol);
  const Sigma3Report r = sigma3_intervals(c, a, b, points, tol);
  Output result;
  result.warnings = static_cast<int>(r.warnings.size());

  if (cfg.format == Format::Csv) {
    std::vector<std::pair<std::string, std::string>> extra{
        {"interval", num(a) + "," + num(b)},
        {"points", std::to_string(points)},
        {"tol", num(tol)}};
    if (!cfg.interval) extra.emplace_back("note", "default search interval (heuristic)");
    for (const auto& w : r.warnings) extra.emplace_back("warning", w);
    csv_header(os, cfg, c, extra);
    os << "kind,lo,hi,rho_lo,rho_hi,rho_mid,open_left,open_right\n";
    for (const auto& iv : r.intervals) {
      os << "interval," << num(iv.lo) << ',' << num(iv.hi) << ',' << num(iv.rho_lo) << ','
         << num(iv.rho_hi) << ',' << num(iv.rho_mid) << ',' << (iv.open_left ? 1 : 0) << ','
         << (iv.open_right ? 1 : 0) << '\n';
    }
    for (const auto& t : r.touches) {
      os << "touch," << num(t.lambda) << ',' << num(t.lambda) << ',' << num(t.rho) << ','
         << num(t.rho) << ',' << num(t.rho) << ",0,0\n";
    }
  } else {
    json j = config_json(cfg, c);
    j["interval"] = {static_cast<double>(a), static_cast<double>(b)};
    j["points"] = points;
    j["tol"] = static_cast<double>(tol);
    j["warnings"] = r.warnings;
    json ivs = json::array();
    for (const auto& iv : r.intervals) {
      ivs.push_back({{"lo", static_cast<double>(iv.lo)},
                     {"hi", static_cast<double>(iv.hi)},
                     {"rho_lo", jnum(iv.rho_lo)},
                     {"rho_hi", jnum(iv.rho_hi)},
                     {"rho_mid", jnum(iv.rho_mid)},
                     {"open_left", iv.open_left},
                     {"open_right", iv.open_right}});
    }
    json touches = json::array();
    for (const auto& t : r.touches) {
      touches.push_back({{"lambda", static_cast<double>(t.lambda)},
                         {"rho", jnum(t.rho)}});
    }
    j["intervals"] = ivs;
    j["touches"] = touches;
    os << j.dump(2) << '\n';
  }
  return result;
}

Output do_verify(const RunConfig& cfg, const PeriodicCoefficients& c, std::ostream& os) {
  const std::vector<SuiteResult> suites = run_verification(c);
  Output result;
  for (const auto& s : suites) result.failed |= !s.passed;

  if (cfg.format == Format::Csv) {
    csv_header(os, cfg, c, {{"result", result.failed ? "FAIL" : "PASS"}});
    os << "suite,passed,checks,failures,worst_ratio,notes\n";
    for (const auto& s : suites) {
      std::string notes;
      for (const auto& n : s.notes) notes += (notes.empty() ? "" : "; ") + n;
      // Notes may contain commas; quote them.
      os << s.name << ',' << (s.passed ? "true" : "false") << ',' << s.checks << ','
         << s.failures << ',' << num(s.worst_ratio) << ",\"" << notes << "\"\n";
    }
  } else {
    json j = config_json(cfg, c);
    j["passed"] = !result.failed;
    json arr = json::array();
    for (const auto& s : suites) {
      arr.push_back({{"suite", s.name},
                     {"passed", s.passed},
                     {"checks", s.checks},
                     {"failures", s.failures},
                     {"worst_ratio", static_cast<double>(s.worst_ratio)},
                     {"notes", s.notes}});
    }
    j["suites"] = arr;
    os << j.dump(2) << '\n';
  }
  return result;
}

}  // namespace

std::pair<Real, Real> parse_interval(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("interval must be A,B");
  try {
    std::size_t used_a = 0;
    std::size_t used_b = 0;
    const std::string sa = text.substr(0, comma);
    const std::string sb = text.substr(comma + 1);
    const Real a = std::stold(sa, &used_a);
    const Real b = std::stold(sb, &used_b);
    if (used_a != sa.size() || used_b != sb.size()) throw std::invalid_argument("trailing text");
    return {a, b};
  } catch (const std::exception&) {
    throw std::invalid_argument("interval must be A,B with numeric A, B: " + text);
  }
}

std::pair<int, int> parse_n_range(const std::string& text) {
  static const std::regex re(R"(^\s*([+-]?\d+)\s*\.\.\s*([+-]?\d+)\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw std::invalid_argument("n range must be A..B: " + text);
  try {
    return {std::stoi(m[1].str()), std::stoi(m[2].str())};
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("n range out of integer range: " + text);
  }
}

void validate(const RunConfig& cfg) {
  const bool inline_consts = cfg.p_const.has_value() || cfg.q_const.has_value();
  if (cfg.coeffs_path && inline_consts) {
    throw std::invalid_argument("give either --coeffs or --p-const/--q-const, not both");
  }
  if (!cfg.coeffs_path && !inline_consts) {
    throw std::invalid_argument("no coefficients: give --coeffs FILE or --p-const/--q-const");
  }
  if (cfg.grid < 1) throw std::invalid_argument("--grid must be positive");
  if (cfg.tol && !(*cfg.tol > 0.0L)) throw std::invalid_argument("--tol must be positive");
  if (!(cfg.circle_tol > 0.0L)) throw std::invalid_argument("--circle-tol must be positive");
  if (cfg.interval) {
    const auto [a, b] = *cfg.interval;
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
      throw std::invalid_argument("interval must satisfy A < B");
    }
  }
  if (cfg.points && *cfg.points < 2) throw std::invalid_argument("--points must be at least 2");
  if (cfg.command == Command::Eigs) {
    if (!(cfg.k >= 0.0L && cfg.k < 2 * kPi)) throw std::invalid_argument("--k must lie in [0, 2 pi)");
    if (cfg.n_range.first > cfg.n_range.second) throw std::invalid_argument("empty --n-range");
  }
  if (cfg.command == Command::Scan && !cfg.interval) {
    throw std::invalid_argument("scan needs --interval A,B");
  }
}

PeriodicCoefficients load_coefficients(const RunConfig& cfg) {
  if (cfg.coeffs_path) return triband::load_coefficients(*cfg.coeffs_path);
  return PeriodicCoefficients::from_constants(cfg.p_const.value_or(0.0), cfg.q_const.value_or(0.0),
                                              static_cast<std::size_t>(cfg.grid));
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    validate(cfg);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadConfig;
  }

  std::optional<PeriodicCoefficients> coeffs;
  try {
    coeffs = load_coefficients(cfg);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return cfg.coeffs_path ? kExitFileError : kExitBadConfig;
  }

  std::ostringstream buffer;
  Output result;
  try {
    switch (cfg.command) {
      case Command::Scan:
        result = do_scan(cfg, *coeffs, buffer);
        break;
      case Command::Eigs:
        result = do_eigs(cfg, *coeffs, buffer);
        break;
      case Command::Sigma3:
        result = do_sigma3(cfg, *coeffs, buffer);
        break;
      case Command::Verify:
        result = do_verify(cfg, *coeffs, buffer);
        break;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadConfig;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }

  if (cfg.out_path) {
    std::ofstream f(*cfg.out_path);
    f << buffer.str();
    f.close();
    if (!f) {
      err << "error: cannot write " << *cfg.out_path << '\n';
      return kExitFileError;
    }
  } else {
    out << buffer.str();
  }
  if (result.warnings > 0) err << "warning: " << result.warnings << " warning(s), see output\n";
  if (result.failed) {
    err << "verification failed\n";
    return kExitVerifyFailed;
  }
  return kExitOk;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  for (int i = 0; i < argc; ++i) cfg.argv.emplace_back(argv[i]);

  CLI::App app{"Floquet spectra of i y''' + i (p y)' + i p y' + q y with 1-periodic p, q"};
  app.require_subcommand(1);

  std::string coeffs_path;
  double p_const = 0.0;
  double q_const = 0.0;
  std::string interval;
  std::string n_range;
  double k = 0.0;
  double tol = 0.0;
  double circle_tol = static_cast<double>(cfg.circle_tol);
  int points = 0;
  std::string out_path;
  std::string format = "csv";

  struct Handles {
    CLI::Option* coeffs;
    CLI::Option* p;
    CLI::Option* q;
    CLI::Option* interval;
    CLI::Option* points;
    CLI::Option* k;
    CLI::Option* n_range;
    CLI::Option* tol;
    CLI::Option* out;
  };
  std::vector<std::pair<CLI::App*, Handles>> subs;

  auto add = [&](const char* name, const char* help, Command cmd) {
    CLI::App* sub = app.add_subcommand(name, help);
    Handles h{};
    h.coeffs = sub->add_option("--coeffs", coeffs_path, "coefficient JSON file");
    h.p = sub->add_option("--p-const", p_const, "constant p");
    h.q = sub->add_option("--q-const", q_const, "constant q");
    sub->add_option("--grid", cfg.grid, "cells for constant coefficients")->capture_default_str();
    h.interval = sub->add_option("--interval", interval, "real interval A,B");
    h.points = sub->add_option("--points", points, "grid points");
    h.k = sub->add_option("--k", k, "quasimomentum in [0, 2 pi)");
    h.n_range = sub->add_option("--n-range", n_range, "eigenvalue indices A..B (default -5..5)");
    h.tol = sub->add_option("--tol", tol, "tolerance of the command");
    sub->add_option("--circle-tol", circle_tol, "unit-circle tolerance for |tau|")
        ->capture_default_str();
    h.out = sub->add_option("--out", out_path, "output file (default stdout)");
    sub->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->callback([&cfg, cmd] { cfg.command = cmd; });
    subs.emplace_back(sub, h);
  };
  add("scan", "band table on a uniform real grid", Command::Scan);
  add("eigs", "Floquet eigenvalues lambda_n(k)", Command::Eigs);
  add("sigma3", "intervals where the spectrum has multiplicity 3", Command::Sigma3);
  add("verify", "run the invariant suites", Command::Verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadConfig;
  }

  try {
    for (const auto& [sub, h] : subs) {
      if (!sub->parsed()) continue;
      if (h.coeffs->count()) cfg.coeffs_path = coeffs_path;
      if (h.p->count()) cfg.p_const = p_const;
      if (h.q->count()) cfg.q_const = q_const;
      if (h.interval->count()) cfg.interval = parse_interval(interval);
      if (h.points->count()) cfg.points = points;
      if (h.k->count()) cfg.k = k;
      if (h.n_range->count()) cfg.n_range = parse_n_range(n_range);
      if (h.tol->count()) cfg.tol = tol;
      if (h.out->count()) cfg.out_path = out_path;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadConfig;
  }
  cfg.circle_tol = circle_tol;
  cfg.format = format == "json" ? Format::Json : Format::Csv;
  return run(cfg, out, err);
}

}  // namespace triband::cli
