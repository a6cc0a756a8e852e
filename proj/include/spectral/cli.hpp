#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "spectral/error.hpp"

namespace spectral::cli {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kVersion = "0.1.0";

enum class Kind { matrix, unitary, krein, distcore_suite };
std::string_view to_string(Kind kind);

/// Artifact paths; relative paths resolve against the config file's directory.
struct Outputs {
  std::string report;    // JSON report
  std::string csv;       // check table
  std::string plot_dir;  // one file per available plot-data table
};

/// A validated scenario. `parameters` holds every kind-specific parameter with
/// defaults filled in, so a report records exactly what was run.
struct ScenarioConfig {
  Kind kind = Kind::krein;
  std::string name;
  Json parameters = Json::object();
  std::map<std::string, double> tolerances;
  Outputs outputs;
  std::filesystem::path base_dir = ".";
};

/// Throws Error(config_invalid) with "source:line:column" for malformed JSON
/// and "source: /json/pointer: ..." for schema violations.
ScenarioConfig parse_config(std::string_view text, const std::string& source = "<config>");
/// Throws io_error when the file cannot be read.
ScenarioConfig load_config(const std::filesystem::path& path);

/// Replaces one parameter by a sweep value (a number, or kappa_star/kappa_one
/// for kappa) and revalidates.
ScenarioConfig with_parameter(const ScenarioConfig& config, const std::string& name, const std::string& value);

/// Names of the checks a scenario emits, in report order.
std::vector<std::string> check_names(const ScenarioConfig& config);

struct CheckRecord {
  std::string name;
  std::string anchor;    // the statement being verified
  std::string relation;  // "<=": value <= tolerance passes; ">": value > tolerance passes
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string note;
};

struct Report {
  Kind kind = Kind::krein;
  std::string name;
  Json parameters;
  std::vector<CheckRecord> checks;
  Json results = Json::object();
  Json data = Json::object();  // plot tables: {"columns": [...], "rows": [[...], ...]}
  std::vector<int> grid_sizes;
  double elapsed_ms = 0.0;

  bool passed() const;
};

Report run_scenario(const ScenarioConfig& config);

/// Timing lives only under environment.timing_ms.
Json to_json(const Report& report);
std::string checks_csv(const Report& report);
/// Writes whatever the config's outputs request. Throws io_error.
void write_outputs(const ScenarioConfig& config, const Report& report);

inline constexpr std::string_view kPlotKinds[] = {"C_boundary", "mu_diag", "eigenfunction", "convergence"};
/// Whitespace-separated columns under '#' comment lines. Throws missing_data.
std::string export_plotdata(const Json& report, std::string_view what);

struct SweepResult {
  std::string csv;
  bool passed = true;
};
SweepResult sweep(const ScenarioConfig& config, const std::string& parameter,
                  const std::vector<std::string>& values);

enum ExitCode : int { exit_ok = 0, exit_check_failed = 1, exit_config_invalid = 2, exit_io_error = 3 };
ExitCode exit_code_for(ErrorCode code);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view text);

}  // namespace spectral::cli
