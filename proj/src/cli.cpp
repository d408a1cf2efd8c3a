#include "bellport/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <thread>

#include "bellport/bell_model.hpp"
#include "bellport/lp/mps.hpp"
#include "bellport/lp/tableau_simplex.hpp"
#include "bellport/oracle.hpp"

namespace bellport::cli {

namespace {

std::string fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

ResultRow compute_row(const RunConfig& config, const PhaseSettings& settings) {
  const auto start = std::chrono::steady_clock::now();
  ResultRow row;
  row.n = settings.dimension();
  try {
    const ThresholdResult ideal = solve_threshold(settings);
    row.v_crit = ideal.v_crit;
    row.f_threshold = 1.0 - ideal.v_crit;
    row.iterations = ideal.diagnostics.iterations;
    if (config.mode == Mode::efficiency_scan || config.mode == Mode::efficiency_bisect) {
      const EfficiencyScanResult scan = config.mode == Mode::efficiency_scan
                                            ? scan_critical_efficiency(settings, config.step)
                                            : bisect_critical_efficiency(settings, config.tol);
      row.eta_critical = scan.eta_critical;
      row.iterations += scan.total_iterations();
    }
  } catch (const SolverError& e) {
    row.error = e.what();
    row.iterations = e.diagnostics().iterations;
  }
  row.wall_ms = elapsed_ms(start);
  return row;
}

std::vector<int> dimensions(const RunConfig& config, const std::optional<PhaseSettings>& custom) {
  if (custom) return {custom->dimension()};
  std::vector<int> out;
  for (int n = config.n_min; n <= config.n_max; ++n) out.push_back(n);
  return out;
}

PhaseSettings settings_for(int n, const std::optional<PhaseSettings>& custom) {
  return custom ? *custom : paper_settings(n);
}

std::vector<ResultRow> compute_rows(const RunConfig& config, const std::vector<int>& ns,
                                    const std::optional<PhaseSettings>& custom) {
  std::vector<ResultRow> rows(ns.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < ns.size(); i = next++) rows[i] = compute_row(config, settings_for(ns[i], custom));
  };
  const int jobs = std::max(1, std::min<int>(config.jobs, static_cast<int>(ns.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

void emit(const RunConfig& config, const std::string& text, std::ostream& out) {
  if (config.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(config.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file " + config.out.string());
  file << text;
}

int run_export(const RunConfig& config, const std::vector<int>& ns, const std::optional<PhaseSettings>& custom,
               std::ostream& out) {
  const std::filesystem::path dir = config.out.empty() ? std::filesystem::path(".") : config.out;
  std::filesystem::create_directories(dir);
  for (int n : ns) {
    const auto program = build_threshold_lp(settings_for(n, custom));
    const std::string name = "BELLN" + std::to_string(n);
    const std::filesystem::path path = dir / ("threshold_n" + std::to_string(n) + ".mps");
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + path.string());
    file << lp::export_mps(program, name);
    out << path.string() << '\n';
  }
  return kSuccess;
}

int run_verify(const std::vector<int>& ns, const std::optional<PhaseSettings>& custom,
               std::ostream& out) {
  bool ok = true;
  auto report = [&](bool pass, const std::string& what) {
    ok = ok && pass;
    out << (pass ? "PASS " : "FAIL ") << what << '\n';
  };
  for (int n : ns) {
    if (n > oracle::kMaxOracleDimension) {
      out << "SKIP n=" << n << " beyond oracle range\n";
      continue;
    }
    const PhaseSettings settings = settings_for(n, custom);
    const double simplex = solve_threshold(settings).f_threshold;
    const double vertex = oracle::oracle_threshold(settings);
    report(std::abs(simplex - vertex) <= 1e-7,
           "n=" + std::to_string(n) + " simplex " + fixed(simplex, 12) + " vs vertex " + fixed(vertex, 12));
    if (n == 2) {
      const double chsh = 1.0 - oracle::chsh_analytic(settings);
      report(std::abs(simplex - chsh) <= 1e-6, "n=2 simplex vs CHSH closed form " + fixed(chsh, 12));
    }
    if (!custom && (n == 2 || n == 3)) {
      const double exact = n == 2 ? oracle::exact_oracle_threshold<Sqrt2Field>(paper_settings_exact(2)).to_double()
                                  : oracle::exact_oracle_threshold<Sqrt3Field>(paper_settings_exact(3)).to_double();
      report(std::abs(simplex - exact) <= 1e-9, "n=" + std::to_string(n) + " simplex vs exact " + fixed(exact, 12));
    }
  }
  return ok ? kSuccess : kSolverFailure;
}

}  // namespace

std::optional<Mode> parse_mode(const std::string& text) {
  if (text == "threshold") return Mode::threshold;
  if (text == "efficiency-scan") return Mode::efficiency_scan;
  if (text == "efficiency-bisect") return Mode::efficiency_bisect;
  if (text == "export-mps") return Mode::export_mps;
  if (text == "verify") return Mode::verify;
  return std::nullopt;
}

std::optional<Format> parse_format(const std::string& text) {
  if (text == "csv") return Format::csv;
  if (text == "json") return Format::json;
  return std::nullopt;
}

void validate(const RunConfig& config) {
  if (config.max_n_ceiling < 2) throw UsageError("--max-n-ceiling must be at least 2");
  if (config.n_min < 2) throw UsageError("--n-min must be at least 2");
  if (config.n_max < config.n_min) throw UsageError("--n-max must not be below --n-min");
  if (config.n_max > config.max_n_ceiling) {
    throw UsageError("--n-max " + std::to_string(config.n_max) + " exceeds ceiling " +
                     std::to_string(config.max_n_ceiling));
  }
  if (!(config.step > 0.0 && config.step < 1.0)) throw UsageError("--step must lie in (0, 1)");
  if (!(config.tol > 0.0)) throw UsageError("--tol must be positive");
  if (config.jobs < 1) throw UsageError("--jobs must be at least 1");
}

std::string format_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (const auto& r : rows) {
    os << r.n << ',';
    if (!r.error) {
      os << fixed(r.f_threshold, 12) << ',' << fixed(r.v_crit, 12) << ',';
      if (r.eta_critical) os << fixed(*r.eta_critical, 10);
    } else {
      os << ",,";
    }
    os << ',' << r.iterations << ',' << fixed(r.wall_ms, 1) << '\n';
  }
  return os.str();
}

std::string format_json(const std::vector<ResultRow>& rows) {
  nlohmann::ordered_json array = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json o;
    o["n"] = r.n;
    if (r.error) {
      o["f_threshold"] = nullptr;
      o["v_crit"] = nullptr;
      o["eta_critical"] = nullptr;
    } else {
      o["f_threshold"] = r.f_threshold;
      o["v_crit"] = r.v_crit;
      o["eta_critical"] = r.eta_critical ? nlohmann::ordered_json(*r.eta_critical) : nlohmann::ordered_json();
    }
    o["iterations"] = r.iterations;
    o["wall_ms"] = r.wall_ms;
    if (r.error) o["error"] = *r.error;
    array.push_back(std::move(o));
  }
  return array.dump(2) + "\n";
}

PhaseSettings load_phase_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw PhaseFileError(PhaseFileErrorKind::missing_file, "cannot open phase file " + path.string());
  std::vector<PhaseVector> vectors;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::vector<double> values;
    std::stringstream fields(t);
    std::string token;
    while (std::getline(fields, token, ',')) {
      const std::string tok = trim(token);
      std::size_t used = 0;
      double value = 0.0;
      try {
        value = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (tok.empty() || used != tok.size() || !std::isfinite(value)) {
        throw PhaseFileError(PhaseFileErrorKind::non_numeric,
                             path.string() + ":" + std::to_string(line_no) + ": not a number: '" + tok + "'");
      }
      values.push_back(value);
    }
    vectors.push_back(Eigen::Map<const PhaseVector>(values.data(), static_cast<Eigen::Index>(values.size())));
  }
  if (vectors.size() != 4) {
    throw PhaseFileError(PhaseFileErrorKind::line_count, path.string() + ": expected 4 phase lines, found " +
                                                             std::to_string(vectors.size()));
  }
  for (const auto& v : vectors) {
    if (v.size() != vectors[0].size()) {
      throw PhaseFileError(PhaseFileErrorKind::length_mismatch, path.string() + ": phase lines differ in length");
    }
  }
  if (vectors[0].size() < 2) {
    throw PhaseFileError(PhaseFileErrorKind::length_mismatch, path.string() + ": need at least 2 phases per line");
  }
  return {vectors[0], vectors[1], vectors[2], vectors[3]};
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::optional<PhaseSettings> custom;
  try {
    validate(config);
    if (config.phases) {
      custom = load_phase_file(*config.phases);
      const int n = custom->dimension();
      if (n > config.max_n_ceiling) throw UsageError("phase file dimension " + std::to_string(n) + " exceeds ceiling");
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const PhaseFileError& e) {
    err << "phase file error: " << e.what() << '\n';
    return kUsageError;
  }

  const std::vector<int> ns = dimensions(config, custom);
  try {
    switch (config.mode) {
      case Mode::export_mps:
        return run_export(config, ns, custom, out);
      case Mode::verify:
        return run_verify(ns, custom, out);
      default:
        break;
    }
    const std::vector<ResultRow> rows = compute_rows(config, ns, custom);
    emit(config, config.format == Format::csv ? format_csv(rows) : format_json(rows), out);
    bool failed = false;
    for (const auto& r : rows) {
      if (r.error) {
        err << "n=" << r.n << ": " << *r.error << '\n';
        failed = true;
      }
    }
    return failed ? kSolverFailure : kSuccess;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kSolverFailure;
  }
}

}  // namespace bellport::cli
