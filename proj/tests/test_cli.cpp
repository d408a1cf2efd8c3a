#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <sstream>

#include "bellport/cli.hpp"

using namespace bellport;
using namespace bellport::cli;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "bellport_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::filesystem::path write_file(const std::string& name, const std::string& text) {
  const auto path = scratch(name);
  std::ofstream(path) << text;
  return path;
}

PhaseFileErrorKind load_error(const std::filesystem::path& path) {
  try {
    load_phase_file(path);
  } catch (const PhaseFileError& e) {
    return e.kind();
  }
  FAIL("no PhaseFileError");
  return PhaseFileErrorKind::missing_file;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

// CSV without the timing column, which legitimately varies between runs.
std::string without_timing(const std::string& csv) {
  std::string out;
  for (const auto& l : lines_of(csv)) out += l.substr(0, l.rfind(',')) + '\n';
  return out;
}

}  // namespace

TEST_CASE("mode and format names") {
  CHECK(parse_mode("threshold") == Mode::threshold);
  CHECK(parse_mode("efficiency-scan") == Mode::efficiency_scan);
  CHECK(parse_mode("efficiency-bisect") == Mode::efficiency_bisect);
  CHECK(parse_mode("export-mps") == Mode::export_mps);
  CHECK(parse_mode("verify") == Mode::verify);
  CHECK(!parse_mode("sweep"));
  CHECK(parse_format("json") == Format::json);
  CHECK(!parse_format("xml"));
}

TEST_CASE("phase file round trip") {
  const auto s = paper_settings(3);
  std::ostringstream text;
  text.precision(17);
  text << "# a1\n" << s.a1(0) << ", " << s.a1(1) << "," << s.a1(2) << "\n\n";
  for (const auto* v : {&s.a2, &s.b1, &s.b2}) text << (*v)(0) << "," << (*v)(1) << "," << (*v)(2) << "\n";
  const PhaseSettings loaded = load_phase_file(write_file("roundtrip.txt", text.str()));
  CHECK(loaded.dimension() == 3);
  CHECK((loaded.a2 - s.a2).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((loaded.b2 - s.b2).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("phase file errors") {
  CHECK(load_error(scratch("does_not_exist.txt")) == PhaseFileErrorKind::missing_file);
  CHECK(load_error(write_file("three_lines.txt", "0,1\n0,1\n0,1\n")) == PhaseFileErrorKind::line_count);
  CHECK(load_error(write_file("bad_number.txt", "0,1\n0,x\n0,1\n0,1\n")) == PhaseFileErrorKind::non_numeric);
  CHECK(load_error(write_file("ragged.txt", "0,1\n0,1,2\n0,1\n0,1\n")) == PhaseFileErrorKind::length_mismatch);
}

TEST_CASE("threshold sweep as CSV") {
  RunConfig config;
  config.n_min = 2;
  config.n_max = 3;
  std::ostringstream out, err;
  REQUIRE(run(config, out, err) == kSuccess);
  const auto lines = lines_of(out.str());
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == kCsvHeader);
  CHECK(lines[1].rfind("2,0.292893218813,0.707106781187,,", 0) == 0);
  CHECK(lines[2].rfind("3,0.30384757", 0) == 0);
}

TEST_CASE("output is deterministic across runs and job counts") {
  RunConfig config;
  config.n_min = 2;
  config.n_max = 4;
  std::ostringstream a, b, err;
  REQUIRE(run(config, a, err) == kSuccess);
  config.jobs = 3;
  REQUIRE(run(config, b, err) == kSuccess);
  CHECK(without_timing(a.str()) == without_timing(b.str()));
}

TEST_CASE("JSON output with efficiency") {
  RunConfig config;
  config.mode = Mode::efficiency_bisect;
  config.format = Format::json;
  config.tol = 1e-2;
  std::ostringstream out, err;
  REQUIRE(run(config, out, err) == kSuccess);
  const auto doc = nlohmann::json::parse(out.str());
  REQUIRE(doc.size() == 1);
  CHECK(doc[0]["n"] == 2);
  CHECK(std::abs(doc[0]["eta_critical"].get<double>() - 2.0 * (std::numbers::sqrt2 - 1.0)) < 1e-2);

  config.mode = Mode::threshold;
  std::ostringstream plain;
  REQUIRE(run(config, plain, err) == kSuccess);
  CHECK(nlohmann::json::parse(plain.str())[0]["eta_critical"].is_null());
}

TEST_CASE("failed rows serialize with empty fields") {
  ResultRow ok{2, 0.25, 0.75, 0.5, 10, 1.0, std::nullopt};
  ResultRow bad{3, 0, 0, std::nullopt, 7, 2.0, std::string("iteration limit")};
  const auto csv = lines_of(format_csv({ok, bad}));
  CHECK(csv[1] == "2,0.250000000000,0.750000000000,0.5000000000,10,1.0");
  CHECK(csv[2] == "3,,,,7,2.0");
  const auto doc = nlohmann::json::parse(format_json({bad}));
  CHECK(doc[0]["f_threshold"].is_null());
  CHECK(doc[0]["error"] == "iteration limit");
}

TEST_CASE("usage errors exit with code 2") {
  std::ostringstream out, err;
  RunConfig config;
  config.n_min = 1;
  CHECK(run(config, out, err) == kUsageError);
  config = {};
  config.n_max = 17;
  CHECK(run(config, out, err) == kUsageError);
  config = {};
  config.step = 0;
  CHECK(run(config, out, err) == kUsageError);
  config = {};
  config.phases = scratch("does_not_exist.txt");
  CHECK(run(config, out, err) == kUsageError);
  config = {};
  config.max_n_ceiling = 2;
  config.phases = write_file("wide.txt", "0,0,0\n0,0,0\n0,0,0\n0,0,0\n");
  CHECK(run(config, out, err) == kUsageError);
  CHECK(err.str().find("usage error") != std::string::npos);
}

TEST_CASE("phase file drives a single run") {
  RunConfig config;
  config.n_max = 5;
  config.phases = write_file("local.txt", "0,0\n0,0\n0,0\n0,0\n");
  std::ostringstream out, err;
  REQUIRE(run(config, out, err) == kSuccess);
  const auto lines = lines_of(out.str());
  REQUIRE(lines.size() == 2);
  CHECK(lines[1].rfind("2,0.000000000000,1.000000000000,", 0) == 0);
}

TEST_CASE("verify mode passes") {
  RunConfig config;
  config.mode = Mode::verify;
  config.n_max = 3;
  std::ostringstream out, err;
  CHECK(run(config, out, err) == kSuccess);
  CHECK(out.str().find("FAIL") == std::string::npos);
  CHECK(lines_of(out.str()).size() == 5);
}

TEST_CASE("export writes one MPS file per dimension") {
  const auto dir = scratch("mps_out");
  std::filesystem::remove_all(dir);
  RunConfig config;
  config.mode = Mode::export_mps;
  config.n_max = 3;
  config.out = dir;
  std::ostringstream out, err;
  REQUIRE(run(config, out, err) == kSuccess);
  CHECK(std::filesystem::exists(dir / "threshold_n2.mps"));
  CHECK(std::filesystem::exists(dir / "threshold_n3.mps"));
  std::ifstream in(dir / "threshold_n2.mps");
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(content.find("NAME          BELLN2") != std::string::npos);
}
