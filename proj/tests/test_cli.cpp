#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "spectral/cli.hpp"
#include "spectral/krein.hpp"

using namespace spectral;
using namespace spectral::cli;
namespace fs = std::filesystem;

namespace {

constexpr double kU0 = 1.64504830792148627643;  // kappa = 5, c = 2, standard bump
constexpr double kKappaStar = 3.33535191889237835124;

ScenarioConfig krein_config(const std::string& kappa, int n = 256) {
  return parse_config(R"({"kind": "krein", "parameters": {"kappa": )" + kappa + R"(, "n": )" + std::to_string(n) + "}}");
}

const CheckRecord* find_check(const Report& r, const std::string& name) {
  for (const CheckRecord& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

ErrorCode error_of(const std::function<void()>& f, std::string* what = nullptr) {
  try {
    f();
  } catch (const Error& e) {
    if (what) *what = e.what();
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::invalid_params;
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != '#') out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& line, char sep = ',') {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string item; std::getline(ss, item, sep);) out.push_back(item);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("spectral_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

int run_binary(const std::string& args) {
  const std::string cmd = std::string(SPECTRAL_DIST_BIN) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("krein scenario with kappa = 0 passes") {
  const Report r = run_scenario(krein_config("0"));
  for (const CheckRecord& c : r.checks) {
    CAPTURE(c.name);
    CHECK(c.passed);
    CHECK_FALSE(c.anchor.empty());
  }
  CHECK(r.passed());
  CHECK(r.results["regime"] == "none");
  CHECK(r.results["zeros"].empty());
}

TEST_CASE("imaginary pair scenario reports u0 and a full defect table") {
  const Report r = run_scenario(krein_config("5"));
  CHECK(r.passed());
  CHECK(r.results["regime"] == "imaginary_pair");
  REQUIRE(r.results.contains("u0"));
  CHECK(r.results["u0"].get<double>() == doctest::Approx(kU0).epsilon(1e-12));
  const auto names = check_names(krein_config("5"));
  REQUIRE(r.checks.size() == names.size());
  for (std::size_t k = 0; k < names.size(); ++k) CHECK(r.checks[k].name == names[k]);
  const Json j = to_json(r);
  CHECK(j["checks"].size() == names.size());
  for (const auto& c : j["checks"]) {
    CHECK(c.contains("anchor"));
    CHECK(c.contains("value"));
    CHECK(c.contains("tolerance"));
    CHECK(c.contains("passed"));
  }
  CHECK(j["environment"]["grid_sizes"].size() >= 1);
  CHECK(j["environment"]["timing_ms"].contains("total"));
}

TEST_CASE("real pair and double zero scenarios pass") {
  const Report real = run_scenario(krein_config("3"));
  CHECK(real.passed());
  CHECK(real.results["x0"].get<double>() == doctest::Approx(0.629967401144054200826).epsilon(1e-12));
  const Report dbl = run_scenario(krein_config("\"kappa_star\""));
  CHECK(dbl.passed());
  CHECK(dbl.results["regime"] == "double_zero");
  CHECK(dbl.results["kappa"].get<double>() == doctest::Approx(kKappaStar).epsilon(1e-12));
}

TEST_CASE("kappa below the real-pair threshold is reported as uncovered") {
  const Report r = run_scenario(krein_config("1"));
  CHECK_FALSE(r.passed());
  const CheckRecord* c = find_check(r, "regime");
  REQUIRE(c != nullptr);
  CHECK_FALSE(c->passed);
  CHECK(r.results["regime"] == "unsupported");
}

TEST_CASE("reports are deterministic apart from timing") {
  const ScenarioConfig c = krein_config("4", 128);
  Json a = to_json(run_scenario(c));
  Json b = to_json(run_scenario(c));
  a["environment"].erase("timing_ms");
  b["environment"].erase("timing_ms");
  CHECK(a.dump() == b.dump());
  CHECK(a.dump().find("timing") == std::string::npos);
}

TEST_CASE("malformed JSON gives line and column") {
  std::string what;
  CHECK(error_of([] { parse_config("{\n  \"kind\": \"krein\",\n  \"parameters\": {\"kappa\": 1,}\n}", "bad.json"); },
                 &what) == ErrorCode::config_invalid);
  CHECK(what.find("bad.json:3:") != std::string::npos);
  CHECK(exit_code_for(ErrorCode::config_invalid) == exit_config_invalid);
}

TEST_CASE("schema violations are rejected") {
  const auto bad = [](const std::string& text) { return error_of([&] { parse_config(text); }); };
  CHECK(bad(R"({"kind": "krein", "parameters": {"kappa": 1}, "extra": 1})") == ErrorCode::config_invalid);
  CHECK(bad(R"({"kind": "krein", "parameters": {"kappa": 1, "kapa": 2}})") == ErrorCode::config_invalid);
  CHECK(bad(R"({"kind": "krein", "parameters": {"kappa": 1, "bump": {"p": [1], "q": 0}}})") ==
        ErrorCode::config_invalid);
  CHECK(bad(R"({"kind": "spline", "parameters": {}})") == ErrorCode::config_invalid);
  CHECK(bad(R"({"kind": "krein", "parameters": {"kappa": -1}})") == ErrorCode::config_invalid);
  CHECK(bad(R"({"kind": "krein", "parameters": {"kappa": 1, "n_sequence": [64, 32]}})") == ErrorCode::config_invalid);
  CHECK(bad(R"({"kind": "krein", "parameters": {"kappa": 1}, "tolerances": {"gram": 1e-20}})") ==
        ErrorCode::config_invalid);
  CHECK(bad(R"({"kind": "krein", "parameters": {"kappa": 1}, "tolerances": {"no_such_check": 1e-3}})") ==
        ErrorCode::config_invalid);
  CHECK(bad(R"({"kind": "matrix", "parameters": {}})") == ErrorCode::config_invalid);
  CHECK(bad(R"({"kind": "matrix", "parameters": {"matrix": [[1, 2]]}})") == ErrorCode::config_invalid);
  CHECK(bad(R"({"kind": "unitary", "parameters": {"unitary": [[1, 1], [0, 1]]}})") == ErrorCode::config_invalid);
  CHECK(bad(R"({"kind": "distcore_suite", "parameters": {"plemelj_u": [0.1, 0.2, 0.05, 0.01]}})") ==
        ErrorCode::config_invalid);
}

TEST_CASE("defaults are recorded in the parameters") {
  const ScenarioConfig c = krein_config("2.5");
  CHECK(c.parameters["c"] == 2.0);
  CHECK(c.parameters["n"] == 256);
  CHECK(c.parameters.contains("bump"));
  CHECK(c.parameters.contains("n_sequence"));
}

TEST_CASE("tolerance overrides reach the checks") {
  const ScenarioConfig c =
      parse_config(R"({"kind": "krein", "parameters": {"kappa": 5, "n": 64}, "tolerances": {"gram": 1e-12}})");
  const Report r = run_scenario(c);
  const CheckRecord* g = find_check(r, "gram");
  REQUIRE(g != nullptr);
  CHECK(g->tolerance == 1e-12);
  CHECK_FALSE(g->passed);
  CHECK_FALSE(r.passed());
}

TEST_CASE("kappa sweep through kappa_star crosses the three regimes") {
  const ScenarioConfig c = krein_config("5", 128);
  const SweepResult s = sweep(c, "kappa", {"3.4", "kappa_star", "3.3"});
  CHECK(s.passed);
  const auto lines = data_lines(s.csv);
  REQUIRE(lines.size() == 4);
  const auto header = split(lines[0]);
  REQUIRE(header.size() >= 5);
  CHECK(header[0] == "kappa");
  CHECK(header[1] == "regime");
  const auto r0 = split(lines[1]), r1 = split(lines[2]), r2 = split(lines[3]);
  CHECK(r0[1] == "imaginary_pair");
  CHECK(r1[1] == "double_zero");
  CHECK(r2[1] == "real_pair");
  CHECK(std::stod(r1[0]) == doctest::Approx(kKappaStar).epsilon(1e-8));
  CHECK(std::stod(r0[3]) > 0.0);  // zero on the imaginary axis
  CHECK(std::stod(r2[2]) > 0.0);  // zero on the real axis
  for (const auto& line : lines) CHECK(split(line).size() == header.size());
}

TEST_CASE("empty sweep gives only the header") {
  const SweepResult s = sweep(krein_config("5"), "kappa", {});
  CHECK(s.passed);
  const auto lines = data_lines(s.csv);
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].rfind("kappa,regime", 0) == 0);
  CHECK(s.csv[0] == '#');
}

TEST_CASE("grid sweep gives decreasing defects") {
  const SweepResult s = sweep(krein_config("5"), "n", {"64", "128", "256"});
  const auto lines = data_lines(s.csv);
  REQUIRE(lines.size() == 4);
  const auto header = split(lines[0]);
  for (const std::string col : {"gram", "completeness_spectral", "eigen_relation", "annihilation"}) {
    const auto at = std::find(header.begin(), header.end(), col) - header.begin();
    REQUIRE(at < static_cast<long>(header.size()));
    CAPTURE(col);
    for (int k = 2; k <= 3; ++k) CHECK(std::stod(split(lines[k])[at]) < std::stod(split(lines[k - 1])[at]));
  }
}

TEST_CASE("sweep rejects unknown parameters and bad values") {
  const ScenarioConfig c = krein_config("5");
  CHECK(error_of([&] { sweep(c, "gamma", {"1"}); }) == ErrorCode::config_invalid);
  CHECK(error_of([&] { sweep(c, "kappa", {"abc"}); }) == ErrorCode::config_invalid);
  CHECK(error_of([&] { sweep(c, "n", {"100.5"}); }) == ErrorCode::config_invalid);
}

TEST_CASE("plot data export") {
  const Json j = to_json(run_scenario(krein_config("5")));
  {
    const auto lines = data_lines(export_plotdata(j, "C_boundary"));
    REQUIRE(lines.size() == 512);
    double prev = -1e9;
    for (const auto& l : lines) {
      const auto cols = split(l, ' ');
      REQUIRE(cols.size() == 3);
      const double x = std::stod(cols[0]);
      CHECK(x > -2.5);
      CHECK(x < 2.5);
      CHECK(x > prev);
      prev = x;
    }
    // C(x +- i0) off the slits agrees with the model
    const auto m = krein::KreinModel::build(2.0, 5.0, {}, 256);
    const auto cols = split(lines[256], ' ');
    const auto b = krein::char_boundary(m, std::stod(cols[0]));
    CHECK(std::stod(cols[1]) == doctest::Approx(b.c1).epsilon(1e-14));
  }
  {
    const auto lines = data_lines(export_plotdata(j, "convergence"));
    REQUIRE(lines.size() == 4);
    CHECK(split(lines[0], ' ')[0] == "32");
    CHECK(split(lines[3], ' ').size() == 2);
  }
  CHECK(data_lines(export_plotdata(j, "eigenfunction")).size() == 512);
  CHECK(data_lines(export_plotdata(j, "mu_diag")).size() == 256);
  const Json d = to_json(run_scenario(parse_config(R"({"kind": "distcore_suite"})")));
  CHECK(error_of([&] { export_plotdata(d, "C_boundary"); }) == ErrorCode::missing_data);
  CHECK(error_of([&] { export_plotdata(j, "spectrum"); }) == ErrorCode::missing_data);
}

TEST_CASE("matrix, unitary and distcore scenarios") {
  const Report m = run_scenario(parse_config(R"({"kind": "matrix", "parameters": {
      "jordan": {"blocks": [{"eigenvalue": [0.5, 0.25], "size": 3}, {"eigenvalue": -1, "size": 2}]},
      "extension": [[0, 1], [0, 0]]}})"));
  CHECK(m.passed());
  CHECK(m.checks.size() == 6);
  const Report bad_ext =
      run_scenario(parse_config(R"({"kind": "matrix", "parameters": {"matrix": [[0]], "extension": [[1, 0], [0, 1]]}})"));
  const CheckRecord* e = find_check(bad_ext, "extension");
  REQUIRE(e != nullptr);
  CHECK(e->relation == ">");
  CHECK(e->passed);
  const Report u = run_scenario(parse_config(R"({"kind": "unitary", "parameters": {"phases": [0.3, -2.0]}})"));
  CHECK(u.passed());
  const Report d = run_scenario(parse_config(R"({"kind": "distcore_suite"})"));
  CHECK(d.passed());
}

TEST_CASE("outputs resolve against the config directory") {
  TempDir dir;
  write_file(dir.path / "cfg" / "s.json",
             R"({"kind": "krein", "parameters": {"kappa": 5, "n": 64},
                 "outputs": {"report": "out/r.json", "csv": "out/r.csv", "plot_dir": "plots"}})");
  const ScenarioConfig c = load_config(dir.path / "cfg" / "s.json");
  write_outputs(c, run_scenario(c));
  CHECK(fs::exists(dir.path / "cfg" / "out" / "r.json"));
  CHECK(fs::exists(dir.path / "cfg" / "out" / "r.csv"));
  for (std::string_view what : kPlotKinds) CHECK(fs::exists(dir.path / "cfg" / "plots" / (std::string(what) + ".dat")));
  const Json j = Json::parse(read_file(dir.path / "cfg" / "out" / "r.json"));
  CHECK(j["kind"] == "krein");
  CHECK(error_of([&] { load_config(dir.path / "missing.json"); }) == ErrorCode::io_error);
  CHECK(exit_code_for(ErrorCode::io_error) == exit_io_error);
}

TEST_CASE("command line exit codes") {
  TempDir dir;
  const auto p = [&](const char* f) { return (dir.path / f).string(); };
  write_file(p("free.json"), R"({"kind": "krein", "parameters": {"kappa": 0, "n": 64}})");
  write_file(p("strict.json"), R"({"kind": "krein", "parameters": {"kappa": 5, "n": 64}, "tolerances": {"gram": 1e-12}})");
  write_file(p("bad.json"), "{\"kind\": \"krein\",\n \"parameters\": {");
  CHECK(run_binary("run " + p("free.json") + " --report " + p("r.json")) == 0);
  CHECK(fs::exists(p("r.json")));
  CHECK(run_binary("run " + p("strict.json")) == 1);
  CHECK(run_binary("run " + p("bad.json")) == 2);
  CHECK(run_binary("run " + p("missing.json")) == 3);
  CHECK(run_binary("run") == 2);
  CHECK(run_binary("--help") == 0);
  CHECK(run_binary("sweep " + p("free.json") + " --param kappa --values ''" + " --out " + p("s.csv")) == 0);
  CHECK(data_lines(read_file(p("s.csv"))).size() == 1);
  CHECK(run_binary("sweep " + p("free.json") + " --param nope --values 1") == 2);
  CHECK(run_binary("export " + p("r.json") + " --what convergence --out " + p("c.dat")) == 0);
  CHECK(run_binary("export " + p("r.json") + " --what bogus") == 2);
  CHECK(run_binary("export " + p("missing.json") + " --what convergence") == 3);
}
