#include <cstdio>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "spectral/cli.hpp"

namespace sc = spectral::cli;

namespace {

std::vector<std::string> split_values(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") std::cout << text;
  else sc::write_file(out_path, text);
}

void print_summary(const sc::Report& r) {
  std::printf("%s (%s): %s\n", r.name.empty() ? "scenario" : r.name.c_str(), std::string(sc::to_string(r.kind)).c_str(),
              r.passed() ? "PASS" : "FAIL");
  for (const auto& c : r.checks)
    std::printf("  %-4s %-22s %.3e %s %.1e%s%s\n", c.passed ? "ok" : "FAIL", c.name.c_str(), c.value, c.relation.c_str(),
                c.tolerance, c.note.empty() ? "" : "  ", c.note.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral distributions of finite-rank and non-self-adjoint operators"};
  app.set_version_flag("--version", std::string(sc::kVersion));
  app.require_subcommand(1);

  std::string config_path, report_path, csv_path, plot_dir;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "Run a scenario and verify its checks");
  run->add_option("config", config_path, "Scenario JSON")->required();
  run->add_option("--report", report_path, "Write the JSON report here (overrides the config)");
  run->add_option("--csv", csv_path, "Write the check table here");
  run->add_option("--plot-dir", plot_dir, "Write plot data files into this directory");
  run->add_flag("--quiet,-q", quiet, "Only set the exit code");

  std::string sweep_config, param, values, sweep_out;
  auto* sw = app.add_subcommand("sweep", "Run a scenario for several values of one parameter");
  sw->add_option("config", sweep_config, "Scenario JSON")->required();
  sw->add_option("--param", param, "Parameter name, e.g. kappa")->required();
  sw->add_option("--values", values, "Comma-separated values")->required();
  sw->add_option("--out", sweep_out, "CSV output (default stdout)");

  std::string export_report, what, export_out;
  auto* ex = app.add_subcommand("export", "Extract plot data from a report");
  ex->add_option("report", export_report, "Report JSON")->required();
  ex->add_option("--what", what, "Table to export")
      ->required()
      ->check(CLI::IsMember({"C_boundary", "mu_diag", "eigenfunction", "convergence"}));
  ex->add_option("--out", export_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? sc::exit_ok : sc::exit_config_invalid;
  }

  try {
    if (*run) {
      sc::ScenarioConfig config = sc::load_config(config_path);
      const auto cwd = std::filesystem::current_path();
      if (!report_path.empty()) config.outputs.report = (cwd / report_path).string();
      if (!csv_path.empty()) config.outputs.csv = (cwd / csv_path).string();
      if (!plot_dir.empty()) config.outputs.plot_dir = (cwd / plot_dir).string();
      const sc::Report report = sc::run_scenario(config);
      sc::write_outputs(config, report);
      if (!quiet) print_summary(report);
      return report.passed() ? sc::exit_ok : sc::exit_check_failed;
    }
    if (*sw) {
      const sc::ScenarioConfig config = sc::load_config(sweep_config);
      const sc::SweepResult r = sc::sweep(config, param, split_values(values));
      emit(sweep_out, r.csv);
      return r.passed ? sc::exit_ok : sc::exit_check_failed;
    }
    if (*ex) {
      sc::Json report;
      try {
        report = sc::Json::parse(sc::read_file(export_report));
      } catch (const sc::Json::parse_error& e) {
        std::fprintf(stderr, "error: %s: not a JSON report: %s\n", export_report.c_str(), e.what());
        return sc::exit_config_invalid;
      }
      emit(export_out, sc::export_plotdata(report, what));
      return sc::exit_ok;
    }
  } catch (const spectral::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return sc::exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return sc::exit_config_invalid;
  }
  return sc::exit_ok;
}
