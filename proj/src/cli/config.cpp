#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "params.hpp"

namespace spectral::cli {
namespace detail {

void fail_at(const std::string& source, const std::string& pointer, const std::string& message) {
  throw Error(ErrorCode::config_invalid, source + ": " + (pointer.empty() ? "/" : pointer) + ": " + message);
}

ObjectReader::ObjectReader(const Json& j, std::string pointer, std::string source)
    : j_(j), pointer_(std::move(pointer)), source_(std::move(source)) {
  if (!j_.is_object()) fail_at(source_, pointer_, "expected an object");
}

bool ObjectReader::has(const std::string& key) const { return j_.contains(key); }

const Json& ObjectReader::raw(const std::string& key) {
  seen_.push_back(key);
  return j_.at(key);
}

void ObjectReader::fail(const std::string& key, const std::string& message) const {
  fail_at(source_, pointer(key), message);
}

double ObjectReader::number(const std::string& key, std::optional<double> fallback) {
  if (!has(key)) {
    if (!fallback) fail(key, "required number is missing");
    return *fallback;
  }
  const Json& v = raw(key);
  if (!v.is_number()) fail(key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(key, "expected a finite number");
  return x;
}

int ObjectReader::integer(const std::string& key, std::optional<int> fallback, int min_value) {
  if (!has(key)) {
    if (!fallback) fail(key, "required integer is missing");
    return *fallback;
  }
  const Json& v = raw(key);
  if (!v.is_number_integer()) fail(key, "expected an integer");
  const auto x = v.get<long long>();
  if (x < min_value || x > std::numeric_limits<int>::max())
    fail(key, "must be an integer >= " + std::to_string(min_value));
  return static_cast<int>(x);
}

std::string ObjectReader::string(const std::string& key, std::optional<std::string> fallback) {
  if (!has(key)) {
    if (!fallback) fail(key, "required string is missing");
    return *fallback;
  }
  const Json& v = raw(key);
  if (!v.is_string()) fail(key, "expected a string");
  return v.get<std::string>();
}

std::vector<double> ObjectReader::numbers(const std::string& key, std::optional<std::vector<double>> fallback) {
  if (!has(key)) {
    if (!fallback) fail(key, "required array is missing");
    return *fallback;
  }
  const Json& v = raw(key);
  if (!v.is_array()) fail(key, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number() || !std::isfinite(v[i].get<double>()))
      fail_at(source_, pointer(key) + "/" + std::to_string(i), "expected a finite number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

void ObjectReader::done() const {
  for (const auto& item : j_.items())
    if (std::find(seen_.begin(), seen_.end(), item.key()) == seen_.end())
      fail_at(source_, pointer(item.key()), "unknown key");
}

std::vector<double> dyadic(int j0, int j1) {
  std::vector<double> u;
  for (int j = j0; j <= j1; ++j) u.push_back(std::ldexp(1.0, -j));
  return u;
}

namespace {

Complex parse_entry(const Json& v, const std::string& source, const std::string& pointer) {
  if (v.is_number()) {
    const double x = v.get<double>();
    if (std::isfinite(x)) return x;
  } else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    const Complex z{v[0].get<double>(), v[1].get<double>()};
    if (std::isfinite(z.real()) && std::isfinite(z.imag())) return z;
  }
  fail_at(source, pointer, "expected a finite number or [re, im]");
}

CMatrix parse_cmatrix(const Json& v, const std::string& source, const std::string& pointer) {
  if (!v.is_array() || v.empty()) fail_at(source, pointer, "expected a non-empty array of rows");
  const std::size_t n = v.size();
  CMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string row = pointer + "/" + std::to_string(i);
    if (!v[i].is_array() || v[i].size() != n) fail_at(source, row, "expected a row of length " + std::to_string(n));
    for (std::size_t j = 0; j < n; ++j) m(i, j) = parse_entry(v[i][j], source, row + "/" + std::to_string(j));
  }
  return m;
}

// S J S^-1 for a block-diagonal Jordan matrix J and a seeded near-identity S.
CMatrix jordan_matrix(const Json& v, const std::string& source, const std::string& pointer) {
  ObjectReader r(v, pointer, source);
  const int seed = r.integer("seed", 7, 0);
  if (!r.has("blocks")) r.fail("blocks", "required array is missing");
  const Json& blocks = r.raw("blocks");
  r.done();
  if (!blocks.is_array() || blocks.empty()) fail_at(source, pointer + "/blocks", "expected a non-empty array");
  std::vector<std::pair<Complex, int>> parts;
  std::size_t n = 0;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    ObjectReader br(blocks[b], pointer + "/blocks/" + std::to_string(b), source);
    if (!br.has("eigenvalue")) br.fail("eigenvalue", "required value is missing");
    const Complex lambda = parse_entry(br.raw("eigenvalue"), source, br.pointer("eigenvalue"));
    const int size = br.integer("size", 1, 1);
    br.done();
    parts.emplace_back(lambda, size);
    n += static_cast<std::size_t>(size);
  }
  if (n > 64) fail_at(source, pointer + "/blocks", "total size above 64");
  CMatrix j(n);
  std::size_t at = 0;
  for (const auto& [lambda, size] : parts) {
    for (int k = 0; k < size; ++k) {
      j(at + k, at + k) = lambda;
      if (k + 1 < size) j(at + k, at + k + 1) = 1.0;
    }
    at += static_cast<std::size_t>(size);
  }
  std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CMatrix s = CMatrix::identity(n);
  const double scale = 0.25 / static_cast<double>(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) s(a, b) += scale * Complex(u(rng), u(rng));
  return s * j * inverse(s);
}

}  // namespace

KreinParams parse_krein(const Json& j, const std::string& source, Json& normalized) {
  ObjectReader r(j, "/parameters", source);
  KreinParams p;
  p.c = r.number("c", 2.0);
  if (!(p.c > 1.0)) r.fail("c", "need c > 1");

  if (r.has("bump")) {
    ObjectReader b(r.raw("bump"), r.pointer("bump"), source);
    p.bump.p = b.numbers("p", std::vector<double>{1.0});
    p.bump.m = b.integer("m", 0, 0);
    p.bump.beta = b.number("beta", 1.0);
    b.done();
    if (p.bump.p.empty()) fail_at(source, r.pointer("bump") + "/p", "need at least one coefficient");
    if (!(p.bump.beta > 0.0)) fail_at(source, r.pointer("bump") + "/beta", "need beta > 0");
  }

  if (!r.has("kappa")) r.fail("kappa", "required value is missing");
  p.kappa_input = r.raw("kappa");
  if (p.kappa_input.is_string()) {
    const auto s = p.kappa_input.get<std::string>();
    if (s == "kappa_star") p.kappa = krein::kappa_star(p.c, p.bump);
    else if (s == "kappa_one") p.kappa = krein::kappa_one(p.c, p.bump);
    else r.fail("kappa", "expected a number, \"kappa_star\" or \"kappa_one\"");
  } else if (p.kappa_input.is_number() && std::isfinite(p.kappa_input.get<double>())) {
    p.kappa = p.kappa_input.get<double>();
  } else {
    r.fail("kappa", "expected a number, \"kappa_star\" or \"kappa_one\"");
  }
  if (!(p.kappa >= 0.0)) r.fail("kappa", "need kappa >= 0");

  p.n = r.integer("n", 256, 16);
  if (p.n > 4096) r.fail("n", "need n <= 4096");
  const auto seq = r.numbers("n_sequence", std::vector<double>{32, 64, 128, 256});
  p.n_sequence.clear();
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const double v = seq[i];
    if (v != std::floor(v) || v < 16 || v > 4096 || (i > 0 && v <= seq[i - 1]))
      r.fail("n_sequence", "need increasing integers in [16, 4096]");
    p.n_sequence.push_back(static_cast<int>(v));
  }
  const auto phi = r.numbers("phi", std::vector<double>{1.2, 1.8});
  if (phi.size() != 2 || !(1.0 < phi[0] && phi[0] < phi[1] && phi[1] < p.c))
    r.fail("phi", "need [a, b] with 1 < a < b < c");
  p.phi_a = phi[0];
  p.phi_b = phi[1];
  p.r_big = r.number("r_big", 0.0);
  if (p.r_big < 0.0) r.fail("r_big", "need r_big >= 0 (0 selects 3 c)");
  p.seed = static_cast<std::uint64_t>(r.integer("seed", 1, 0));
  r.done();

  normalized = Json::object();
  normalized["c"] = p.c;
  normalized["kappa"] = p.kappa_input;
  normalized["bump"] = {{"p", p.bump.p}, {"m", p.bump.m}, {"beta", p.bump.beta}};
  normalized["n"] = p.n;
  normalized["n_sequence"] = p.n_sequence;
  normalized["phi"] = {p.phi_a, p.phi_b};
  normalized["r_big"] = p.r_big;
  normalized["seed"] = p.seed;
  return p;
}

MatrixParams parse_matrix(const Json& j, const std::string& source, Json& normalized) {
  ObjectReader r(j, "/parameters", source);
  MatrixParams p;
  if (r.has("matrix") == r.has("jordan")) r.fail("matrix", "give exactly one of \"matrix\" and \"jordan\"");
  normalized = Json::object();
  if (r.has("matrix")) {
    p.a_input = r.raw("matrix");
    p.a = parse_cmatrix(p.a_input, source, r.pointer("matrix"));
    normalized["matrix"] = p.a_input;
  } else {
    p.a_input = r.raw("jordan");
    p.a = jordan_matrix(p.a_input, source, r.pointer("jordan"));
    normalized["jordan"] = p.a_input;
  }
  p.contour_points = r.integer("contour_points", 256, 16);
  p.seed = static_cast<std::uint64_t>(r.integer("seed", 1, 0));
  if (r.has("extension")) {
    p.extension_input = r.raw("extension");
    p.extension = parse_cmatrix(p.extension_input, source, r.pointer("extension"));
    normalized["extension"] = p.extension_input;
  }
  r.done();
  normalized["contour_points"] = p.contour_points;
  normalized["seed"] = p.seed;
  return p;
}

UnitaryParams parse_unitary(const Json& j, const std::string& source, Json& normalized) {
  ObjectReader r(j, "/parameters", source);
  UnitaryParams p;
  const int given = int(r.has("unitary")) + int(r.has("rotation")) + int(r.has("phases"));
  if (given != 1) r.fail("unitary", "give exactly one of \"unitary\", \"rotation\" and \"phases\"");
  normalized = Json::object();
  if (r.has("unitary")) {
    p.u_key = "unitary";
    p.u_input = r.raw("unitary");
    p.u = parse_cmatrix(p.u_input, source, r.pointer("unitary"));
    if ((p.u.adjoint() * p.u - CMatrix::identity(p.u.dim())).frobenius() > 1e-12)
      r.fail("unitary", "matrix is not unitary (U*U differs from I by more than 1e-12)");
  } else if (r.has("rotation")) {
    p.u_key = "rotation";
    const double t = r.number("rotation");
    p.u_input = t;
    p.u = CMatrix{{std::cos(t), -std::sin(t)}, {std::sin(t), std::cos(t)}};
  } else {
    p.u_key = "phases";
    const auto phases = r.numbers("phases");
    if (phases.empty()) r.fail("phases", "need at least one phase");
    p.u_input = phases;
    std::vector<Complex> d;
    for (double t : phases) d.push_back(std::polar(1.0, t));
    p.u = CMatrix::diagonal(d);
  }
  normalized[p.u_key] = p.u_input;
  int degree = 0;
  if (r.has("fourier")) {
    const Json& f = r.raw("fourier");
    if (!f.is_array() || f.empty()) r.fail("fourier", "expected a non-empty array of [l, re, im]");
    p.fourier.clear();
    for (std::size_t i = 0; i < f.size(); ++i) {
      const Json& t = f[i];
      const bool ok = t.is_array() && t.size() == 3 && t[0].is_number_integer() && t[1].is_number() &&
                      t[2].is_number() && std::abs(t[0].get<long long>()) <= 1000;
      if (!ok) fail_at(source, r.pointer("fourier") + "/" + std::to_string(i), "expected [l, re, im] with |l| <= 1000");
      p.fourier.emplace_back(t[0].get<int>(), Complex(t[1].get<double>(), t[2].get<double>()));
    }
  }
  Json fourier = Json::array();
  for (const auto& [l, c] : p.fourier) {
    degree = std::max(degree, std::abs(l));
    fourier.push_back({l, c.real(), c.imag()});
  }
  normalized["fourier"] = fourier;
  p.L = r.integer("L", degree, 0);
  normalized["L"] = p.L;
  r.done();
  return p;
}

DistcoreParams parse_distcore(const Json& j, const std::string& source, Json& normalized) {
  ObjectReader r(j, "/parameters", source);
  DistcoreParams p;
  const auto check = [&](const std::string& key, const std::vector<double>& u) {
    if (u.size() < 4) r.fail(key, "need at least four values");
    for (std::size_t i = 0; i < u.size(); ++i)
      if (!(u[i] > 0.0) || (i > 0 && !(u[i] < u[i - 1]))) r.fail(key, "need positive decreasing values");
  };
  p.plemelj_u = r.numbers("plemelj_u", dyadic(3, 12));
  check("plemelj_u", p.plemelj_u);
  p.product_u = r.numbers("product_u", dyadic(4, 14));
  check("product_u", p.product_u);
  r.done();
  normalized = {{"plemelj_u", p.plemelj_u}, {"product_u", p.product_u}};
  return p;
}

}  // namespace detail

namespace {

Kind parse_kind(const std::string& s, const std::string& source) {
  if (s == "matrix") return Kind::matrix;
  if (s == "unitary") return Kind::unitary;
  if (s == "krein") return Kind::krein;
  if (s == "distcore_suite") return Kind::distcore_suite;
  detail::fail_at(source, "/kind", "expected matrix, unitary, krein or distcore_suite");
}

Json normalize_parameters(Kind kind, const Json& in, const std::string& source) {
  Json out;
  switch (kind) {
    case Kind::krein: detail::parse_krein(in, source, out); break;
    case Kind::matrix: detail::parse_matrix(in, source, out); break;
    case Kind::unitary: detail::parse_unitary(in, source, out); break;
    case Kind::distcore_suite: detail::parse_distcore(in, source, out); break;
  }
  return out;
}

// Line and column of a 1-based byte offset.
std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

void validate_tolerances(const ScenarioConfig& config, const std::string& source) {
  const auto names = check_names(config);
  for (const auto& [name, tol] : config.tolerances) {
    if (std::find(names.begin(), names.end(), name) == names.end())
      detail::fail_at(source, "/tolerances/" + name, "no check of this name for kind " + std::string(to_string(config.kind)));
    if (!(tol >= std::numeric_limits<double>::epsilon()) || !std::isfinite(tol))
      detail::fail_at(source, "/tolerances/" + name, "tolerance must be finite and at least machine epsilon");
  }
}

}  // namespace

std::string_view to_string(Kind kind) {
  switch (kind) {
    case Kind::matrix: return "matrix";
    case Kind::unitary: return "unitary";
    case Kind::krein: return "krein";
    case Kind::distcore_suite: return "distcore_suite";
  }
  return "krein";
}

ScenarioConfig parse_config(std::string_view text, const std::string& source) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte);
    std::string what = e.what();
    // keep nlohmann's description, drop its own position prefix
    if (const auto at = what.find(": ", what.find("column")); at != std::string::npos) what = what.substr(at + 2);
    throw Error(ErrorCode::config_invalid,
                source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + what);
  }
  detail::ObjectReader top(doc, "", source);
  ScenarioConfig c;
  c.kind = parse_kind(top.string("kind"), source);
  c.name = top.string("name", "");
  const Json empty = Json::object();
  c.parameters = normalize_parameters(c.kind, top.has("parameters") ? top.raw("parameters") : empty, source);
  if (top.has("outputs")) {
    detail::ObjectReader o(top.raw("outputs"), "/outputs", source);
    c.outputs.report = o.string("report", "");
    c.outputs.csv = o.string("csv", "");
    c.outputs.plot_dir = o.string("plot_dir", "");
    o.done();
  }
  if (top.has("tolerances")) {
    const Json& t = top.raw("tolerances");
    if (!t.is_object()) detail::fail_at(source, "/tolerances", "expected an object");
    for (const auto& item : t.items()) {
      if (!item.value().is_number()) detail::fail_at(source, "/tolerances/" + item.key(), "expected a number");
      c.tolerances[item.key()] = item.value().get<double>();
    }
  }
  top.done();
  validate_tolerances(c, source);
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  ScenarioConfig c = parse_config(read_file(path), path.string());
  c.base_dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  return c;
}

ScenarioConfig with_parameter(const ScenarioConfig& config, const std::string& name, const std::string& value) {
  if (!config.parameters.contains(name))
    detail::fail_at("sweep", "/parameters/" + name, "no such parameter for kind " + std::string(to_string(config.kind)));
  Json v;
  if (name == "kappa" && (value == "kappa_star" || value == "kappa_one")) {
    v = value;
  } else {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size() || !std::isfinite(x))
      detail::fail_at("sweep", "/parameters/" + name, "cannot parse value '" + value + "'");
    const bool integral = name == "n" || name == "seed" || name == "contour_points" || name == "L";
    if (integral) {
      if (x != std::floor(x)) detail::fail_at("sweep", "/parameters/" + name, "expected an integer value");
      v = static_cast<long long>(x);
    } else {
      v = x;
    }
  }
  ScenarioConfig out = config;
  Json params = config.parameters;
  params[name] = v;
  out.parameters = normalize_parameters(config.kind, params, "sweep");
  return out;
}

ExitCode exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::io_error: return exit_io_error;
    default: return exit_config_invalid;
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::io_error, "cannot read " + path.string());
  return s.str();
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io_error, "cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::io_error, "write failed for " + path.string());
}

}  // namespace spectral::cli
