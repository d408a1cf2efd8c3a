#ifndef BELLPORT_CLI_HPP
#define BELLPORT_CLI_HPP

// Batch front end: dimension sweeps of the threshold and efficiency
// computations, MPS export and the oracle self-check.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bellport/multiport.hpp"

namespace bellport::cli {

enum class Mode { threshold, efficiency_scan, efficiency_bisect, export_mps, verify };
enum class Format { csv, json };

enum ExitCode : int { kSuccess = 0, kSolverFailure = 1, kUsageError = 2 };

struct RunConfig {
  int n_min = 2;
  int n_max = 2;
  Mode mode = Mode::threshold;
  double step = 0.01;
  double tol = 1e-3;
  Format format = Format::csv;
  /// Output file (csv/json) or directory (export-mps); empty writes to the stream.
  std::filesystem::path out;
  std::optional<std::filesystem::path> phases;
  int jobs = 1;
  int max_n_ceiling = kDefaultDimensionCeiling;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws UsageError describing the first violated constraint.
void validate(const RunConfig& config);

std::optional<Mode> parse_mode(const std::string& text);
std::optional<Format> parse_format(const std::string& text);

struct ResultRow {
  int n = 0;
  double f_threshold = 0;
  double v_crit = 0;
  std::optional<double> eta_critical;
  std::int64_t iterations = 0;
  double wall_ms = 0;
  /// Set when the solver failed for this n; numeric fields are then unset.
  std::optional<std::string> error;
};

inline constexpr const char* kCsvHeader = "n,f_threshold,v_crit,eta_critical,iterations,wall_ms";

std::string format_csv(const std::vector<ResultRow>& rows);
std::string format_json(const std::vector<ResultRow>& rows);

enum class PhaseFileErrorKind { missing_file, line_count, non_numeric, length_mismatch };

class PhaseFileError : public std::runtime_error {
 public:
  PhaseFileError(PhaseFileErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  PhaseFileErrorKind kind() const { return kind_; }

 private:
  PhaseFileErrorKind kind_;
};

/// Four non-empty lines (a1, a2, b1, b2), each a comma-separated list of
/// radian values. Blank lines and lines starting with '#' are skipped.
PhaseSettings load_phase_file(const std::filesystem::path& path);

/// With config.phases set, the dimension comes from the phase file and
/// n_min/n_max are ignored apart from validation.
/// Executes the configured mode and writes its output (to config.out or
/// `out`). Diagnostics go to `err`. Returns an ExitCode.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace bellport::cli

#endif  // BELLPORT_CLI_HPP
