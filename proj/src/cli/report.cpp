#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "params.hpp"
#include "spectral/kernels.hpp"
#include "spectral/parallel.hpp"

namespace spectral::cli {
namespace {

// Shortest %g form that reads back as the same double.
std::string fmt(double x) {
  char buf[32];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell(const Json& v) {
  if (v.is_number()) return fmt(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  return v.dump();
}

std::filesystem::path resolve(const ScenarioConfig& config, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : config.base_dir / path;
}

}  // namespace

Json to_json(const Report& report) {
  Json j = Json::object();
  j["tool"] = "spectral-dist";
  j["version"] = kVersion;
  j["kind"] = to_string(report.kind);
  j["name"] = report.name;
  j["parameters"] = report.parameters;
  j["passed"] = report.passed();
  Json checks = Json::array();
  for (const CheckRecord& c : report.checks) {
    Json r = Json::object();
    r["name"] = c.name;
    r["anchor"] = c.anchor;
    r["relation"] = c.relation;
    r["value"] = c.value;
    r["tolerance"] = c.tolerance;
    r["passed"] = c.passed;
    if (!c.note.empty()) r["note"] = c.note;
    checks.push_back(std::move(r));
  }
  j["checks"] = std::move(checks);
  j["results"] = report.results;
  j["data"] = report.data;
  Json env = Json::object();
  env["version"] = kVersion;
  env["grid_sizes"] = report.grid_sizes;
  env["threads"] = thread_count();
  env["simd"] = kernels::isa_name(kernels::active_isa());
  env["timing_ms"] = {{"total", report.elapsed_ms}};
  j["environment"] = std::move(env);
  return j;
}

std::string checks_csv(const Report& report) {
  std::string out =
      "# columns: name = check; relation = how value is compared with tolerance; value; tolerance; "
      "passed = 1 or 0; anchor = statement being verified; note\n"
      "name,relation,value,tolerance,passed,anchor,note\n";
  for (const CheckRecord& c : report.checks)
    out += c.name + "," + c.relation + "," + fmt(c.value) + "," + fmt(c.tolerance) + "," + (c.passed ? "1" : "0") +
           "," + csv_quote(c.anchor) + "," + csv_quote(c.note) + "\n";
  return out;
}

std::string export_plotdata(const Json& report, std::string_view what) {
  if (std::find(std::begin(kPlotKinds), std::end(kPlotKinds), what) == std::end(kPlotKinds))
    throw Error(ErrorCode::missing_data, "unknown plot data '" + std::string(what) + "'");
  const std::string key(what);
  if (!report.is_object() || !report.contains("data") || !report["data"].contains(key))
    throw Error(ErrorCode::missing_data, "the report has no '" + key + "' data");
  const Json& t = report["data"][key];
  if (!t.contains("columns") || !t.contains("rows") || !t["rows"].is_array())
    throw Error(ErrorCode::missing_data, "malformed '" + key + "' table");
  std::string out = "# spectral-dist plot data: " + key + "\n";
  out += "# scenario: " + report.value("name", std::string()) + " (kind " + report.value("kind", std::string()) + ")\n";
  if (t.contains("description")) out += "# " + t["description"].get<std::string>() + "\n";
  out += "# columns:";
  for (const auto& c : t["columns"]) out += " " + c.get<std::string>();
  out += "\n";
  for (const auto& row : t["rows"]) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? " " : "") + cell(row[i]);
    out += "\n";
  }
  return out;
}

void write_outputs(const ScenarioConfig& config, const Report& report) {
  if (!config.outputs.report.empty())
    write_file(resolve(config, config.outputs.report), to_json(report).dump(2) + "\n");
  if (!config.outputs.csv.empty()) write_file(resolve(config, config.outputs.csv), checks_csv(report));
  if (!config.outputs.plot_dir.empty()) {
    const Json j = to_json(report);
    for (std::string_view what : kPlotKinds)
      if (report.data.contains(std::string(what)))
        write_file(resolve(config, config.outputs.plot_dir) / (std::string(what) + ".dat"), export_plotdata(j, what));
  }
}

SweepResult sweep(const ScenarioConfig& config, const std::string& parameter, const std::vector<std::string>& values) {
  if (!config.parameters.contains(parameter))
    throw Error(ErrorCode::config_invalid,
                "sweep: no parameter '" + parameter + "' for kind " + std::string(to_string(config.kind)));
  const bool krein = config.kind == Kind::krein;
  // the krein regime check duplicates the regime column
  auto names = check_names(config);
  if (krein) names.erase(std::remove(names.begin(), names.end(), "regime"), names.end());
  SweepResult out;
  out.csv = "# spectral-dist sweep over " + parameter + " (kind " + std::string(to_string(config.kind)) +
            (config.name.empty() ? "" : ", scenario " + config.name) + ")\n";
  out.csv += "# columns: " + parameter + " = swept value;";
  if (krein)
    out.csv += " regime = zero regime; zero_re, zero_im = first zero of C (empty when there is none); c_at_0 = C(0);";
  out.csv += " one column per check holding its value (compare with the report's tolerance); passed = 1 if every "
             "check passed\n";
  std::string header = parameter;
  if (krein) header += ",regime,zero_re,zero_im,c_at_0";
  for (const auto& n : names) header += "," + n;
  out.csv += header + ",passed\n";

  for (const std::string& v : values) {
    const ScenarioConfig c = with_parameter(config, parameter, v);
    const Report r = run_scenario(c);
    std::string row;
    if (r.results.contains(parameter) && r.results[parameter].is_number()) row = fmt(r.results[parameter].get<double>());
    else row = cell(c.parameters[parameter]);
    if (krein) {
      row += "," + r.results["regime"].get<std::string>();
      const Json& z = r.results["zeros"];
      row += z.empty() ? ",," : "," + fmt(z[0][0].get<double>()) + "," + fmt(z[0][1].get<double>());
      row += "," + fmt(r.results["c_at_0"].get<double>());
    }
    for (const auto& n : names) {
      const auto it = std::find_if(r.checks.begin(), r.checks.end(), [&](const CheckRecord& k) { return k.name == n; });
      row += "," + (it == r.checks.end() ? std::string() : fmt(it->value));
    }
    row += r.passed() ? ",1" : ",0";
    out.csv += row + "\n";
    out.passed = out.passed && r.passed();
  }
  return out;
}

}  // namespace spectral::cli
