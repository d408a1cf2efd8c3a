#include <CLI11.hpp>
#include <iostream>

#include "bellport/cli.hpp"

int main(int argc, char** argv) {
  using namespace bellport::cli;
  CLI::App app{"Local-realism thresholds for entangled N-level pairs observed through Bell multiports"};
  RunConfig config;
  std::string mode = "threshold";
  std::string format = "csv";
  std::string phases;
  std::string out;
  app.add_option("--mode", mode, "threshold | efficiency-scan | efficiency-bisect | export-mps | verify");
  app.add_option("--n-min", config.n_min, "Smallest dimension");
  app.add_option("--n-max", config.n_max, "Largest dimension");
  app.add_option("--step", config.step, "Efficiency scan step");
  app.add_option("--tol", config.tol, "Efficiency bisection tolerance");
  app.add_option("--format", format, "csv | json");
  app.add_option("--out", out, "Output file (directory for export-mps)");
  app.add_option("--phases", phases, "Phase file: four comma-separated lines a1, a2, b1, b2 (radians)");
  app.add_option("--jobs", config.jobs, "Dimensions solved concurrently");
  app.add_option("--max-n-ceiling", config.max_n_ceiling, "Largest dimension accepted");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }
  const auto parsed_mode = parse_mode(mode);
  const auto parsed_format = parse_format(format);
  if (!parsed_mode || !parsed_format) {
    std::cerr << "usage error: unknown " << (!parsed_mode ? "mode '" + mode : "format '" + format) << "'\n";
    return kUsageError;
  }
  config.mode = *parsed_mode;
  config.format = *parsed_format;
  config.out = out;
  if (!phases.empty()) config.phases = phases;
  return run(config, std::cout, std::cerr);
}
