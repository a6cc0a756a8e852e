// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "spectral/cli.hpp"
#include "spectral/krein.hpp"
#include "spectral/matspec.hpp"

using namespace spectral;
namespace cli = spectral::cli;

namespace {

// c = 2, standard bump; 30-digit quadrature of the defining integral
constexpr double kKappaStarRef = 3.33535191889237835124;

__attribute__((format(printf, 1, 2))) std::string format(const char* fmt, ...) {
  char buf[256];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  return buf;
}

struct Line {
  bool ok = true;
  std::string detail;

  void need(bool cond, const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
    if (!cond) {
      ok = false;
      detail += " [x]";
    }
  }
};

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

cli::ScenarioConfig krein_config(const std::string& kappa, int n = 256) {
  return cli::parse_config(R"({"kind": "krein", "parameters": {"kappa": )" + kappa + R"(, "n": )" + std::to_string(n) +
                           "}}");
}

const cli::CheckRecord& check(const cli::Report& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return c;
  throw std::runtime_error("report has no check " + name);
}

struct KreinRuns {
  cli::Report free, imag, dbl, real;
};

double l2(const krein::KreinModel& m, const std::vector<Complex>& v) {
  double s = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) s += m.weights()[j] * std::norm(v[j]);
  return std::sqrt(s);
}

Line resolvent_equation() {
  Line line;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(-1.0, 1.0), ang(0.0, 2.0 * M_PI), extra(0.5, 2.0);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + t % 5;
    CMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = {u(rng), u(rng)};
    const double r = matspec::gershgorin_radius(a);
    const Complex z1 = std::polar(r + extra(rng), ang(rng)), z2 = std::polar(r + extra(rng), ang(rng));
    worst = std::max(worst, matspec::resolvent_equation_residual(a, z1, z2));
  }
  line.need(worst <= 1e-12, format("20 random matrices %.1e <= 1e-12", worst));

  double wk = 0.0;
  for (double kappa : {5.0, kKappaStarRef, 3.0}) {
    const auto m = krein::KreinModel::build(2.0, kappa, {}, 256);
    std::uniform_real_distribution<double> rad(0.2, 4.0);
    for (int t = 0; t < 20; ++t) {
      Complex z1 = std::polar(rad(rng), ang(rng)), z2 = std::polar(rad(rng), ang(rng));
      if (std::abs(z1.imag()) < 0.1) z1 += Complex(0.0, 0.2);
      if (std::abs(z2.imag()) < 0.1) z2 -= Complex(0.0, 0.2);
      std::vector<Complex> f(m.size());
      for (auto& x : f) x = {u(rng), u(rng)};
      const auto r1 = krein::resolvent_apply(m, z1, f), r2 = krein::resolvent_apply(m, z2, f);
      const auto r12 = krein::resolvent_apply(m, z1, r2);
      std::vector<Complex> d(m.size());
      for (std::size_t j = 0; j < d.size(); ++j) d[j] = r1[j] - r2[j] - (z2 - z1) * r12[j];
      wk = std::max(wk, l2(m, d) / l2(m, f));
    }
  }
  line.need(wk <= 1e-11, format("Krein model n=256, 3 regimes x 20 pairs %.1e <= 1e-11", wk));
  const double s = seconds_since(t0);
  line.need(s < 5.0, format("%.2f s < 5 s", s));
  return line;
}

Line distcore_line(const cli::Report& d, int which) {
  Line line;
  if (which == 2) {
    const auto& p = check(d, "plemelj");
    const auto& o = check(d, "plemelj_order");
    line.need(p.value <= 1e-6, format("5 test functions, extrapolated defect %.1e <= 1e-6", p.value));
    line.need(o.value >= 0.9, format("observed order %.3f >= 0.9", o.value));
  } else if (which == 3) {
    const auto& c = check(d, "dbar");
    line.need(c.value <= 1e-6, format("3 product test functions %.1e <= 1e-6", c.value));
  } else {
    const auto& c = check(d, "pv_product");
    line.need(c.value <= 1e-4, format("3 (phi1, phi2, omega) triples %.1e <= 1e-4", c.value));
  }
  return line;
}

Line matrix_structure() {
  Line line;
  const auto t0 = Clock::now();
  const cli::Report r = cli::run_scenario(cli::parse_config(R"({"kind": "matrix", "parameters": {"jordan": {"blocks": [
      {"eigenvalue": [0.5, 0.25], "size": 3}, {"eigenvalue": -1, "size": 2}, {"eigenvalue": [0, -1.5], "size": 1}]}}})"));
  const cli::Report r2 = cli::run_scenario(cli::parse_config(R"({"kind": "matrix", "parameters": {"jordan": {"blocks": [
      {"eigenvalue": 1, "size": 3}, {"eigenvalue": [-0.5, 0.5], "size": 3}], "seed": 11}}})"));
  double es = 0, mu = 0, co = 0, tp = 0;
  for (const auto* rep : {&r, &r2}) {
    es = std::max(es, check(*rep, "eigen_structure").value);
    mu = std::max(mu, check(*rep, "multiplicativity").value);
    co = std::max(co, check(*rep, "completeness").value);
    tp = std::max(tp, check(*rep, "two_pole").value);
  }
  line.need(es <= 1e-9, format("p^2=p, a^n=0, ap=pa=a %.1e <= 1e-9", es));
  line.need(mu <= 1e-11, format("multiplicativity (blocks up to 3) %.1e <= 1e-11", mu));
  line.need(co <= 1e-10, format("completeness %.1e <= 1e-10", co));
  line.need(tp <= 1e-9, format("two-pole products %.1e <= 1e-9", tp));
  const double s = seconds_since(t0);
  line.need(s < 10.0, format("%.2f s < 10 s", s));
  return line;
}

Line zero_extension() {
  Line line;
  const std::pair<const char*, CMatrix> cases[] = {
      {"0", CMatrix(2)},
      {"nilpotent", CMatrix{{0.0, 1.0}, {0.0, 0.0}}},
      {"identity", CMatrix::identity(2)},
  };
  for (const auto& [name, c] : cases) {
    const double c2 = (c * c).frobenius();
    const double d = matspec::nonunique_extension_defect(c);
    const bool small = c2 <= 1e-12;
    line.need(small == (d <= 1e-12), format("%s: |C^2| %.1e, defect %.1e", name, c2, d));
  }
  return line;
}

Line unitary_measure() {
  Line line;
  double worst = 0.0;
  for (const char* u : {R"("phases": [0.3, -2.0])", R"("rotation": 0.7)", R"("phases": [1.1, 1.1])"}) {
    const auto base = cli::parse_config(std::string(R"({"kind": "unitary", "parameters": {)") + u +
                                        R"(, "fourier": [[0, 1, 0], [1, 0.5, 0], [-2, 0, 0.25], [3, -0.1, 0.2]]}})");
    for (const char* L : {"3", "4", "7"}) {
      const auto r = cli::run_scenario(cli::with_parameter(base, "L", L));
      worst = std::max(worst, check(r, "fourier_smear").value);
    }
  }
  line.need(worst <= 1e-12, format("diagonal/rotation, degree 3, L in {3,4,7}: %.1e <= 1e-12", worst));
  return line;
}

Line krein_regimes() {
  Line line;
  const auto t0 = Clock::now();
  const double ks = krein::kappa_star(2.0);
  line.need(std::abs(ks - kKappaStarRef) <= 1e-8 * kKappaStarRef, format("kappa* %.12f (rel %.1e)", ks,
            std::abs(ks - kKappaStarRef) / kKappaStarRef));

  const auto base = krein_config("5", 512);
  const char* values[] = {"5", "4", "3.5", "3.34", "kappa_star", "3.33", "3.2", "3", "2.5"};
  std::vector<std::string> seen;
  double resid = 0.0, gap = 0.0;
  for (const char* v : values) {
    const cli::Report r = cli::run_scenario(cli::with_parameter(base, "kappa", v));
    const std::string reg = r.results["regime"];
    if (seen.empty() || seen.back() != reg) seen.push_back(reg);
    resid = std::max(resid, check(r, "zero_residual").value);
    if (reg != "double_zero") gap = std::max(gap, check(r, "crosscheck").value);
  }
  const bool order = seen == std::vector<std::string>{"imaginary_pair", "double_zero", "real_pair"};
  std::string path;
  for (const auto& s : seen) path += (path.empty() ? "" : " -> ") + s;
  line.need(order, format("%s", path.c_str()));
  line.need(resid <= 1e-12, format("|C(zero)| %.1e <= 1e-12", resid));
  line.need(gap <= 1e-8, format("crosscheck final gap %.1e <= 1e-8", gap));

  // the regime flips across kappa* within the stated relative accuracy
  const auto side = [](double kappa) { return krein::classify(krein::KreinModel::build(2.0, kappa, {}, 256)).regime; };
  line.need(side(kKappaStarRef * (1 + 1e-8)) == krein::Regime::imaginary_pair &&
                side(kKappaStarRef * (1 - 1e-8)) == krein::Regime::real_pair,
            "transition within 1e-8 of the oracle");
  const double s = seconds_since(t0);
  line.need(s < 60.0, format("%.1f s < 60 s", s));
  return line;
}

Line gram(const KreinRuns& runs) {
  Line line;
  const TestFn1D phi = TestFn1D::bump(1.2, 1.8);
  double d256 = 0.0, d512 = 0.0;
  for (double kappa : {5.0, kKappaStarRef, 3.0}) {
    d256 = std::max(d256, krein::orthogonality_gram(krein::KreinModel::build(2.0, kappa, {}, 256), phi, phi).defect);
    d512 = std::max(d512, krein::orthogonality_gram(krein::KreinModel::build(2.0, kappa, {}, 512), phi, phi).defect);
  }
  line.need(d256 <= 1e-3, format("n=256 %.1e <= 1e-3", d256));
  // halving within a factor 2 means d512 <= 2 * d256 / 2; faster decay also passes
  line.need(d512 <= d256, format("n=512 %.1e (reduction x%.3g, need >= 1)", d512, d256 / d512));
  double disj = 0.0;
  for (const auto* r : {&runs.imag, &runs.dbl, &runs.real}) disj = std::max(disj, check(*r, "gram_disjoint").value);
  line.need(disj <= 1e-4, format("disjoint supports %.1e <= 1e-4", disj));
  return line;
}

Line completeness(const KreinRuns& runs) {
  Line line;
  double c = 0.0, s = 0.0;
  for (const auto* r : {&runs.imag, &runs.dbl, &runs.real}) {
    c = std::max(c, check(*r, "completeness_contour").value);
    s = std::max(s, check(*r, "completeness_spectral").value);
  }
  line.need(c <= 1e-3, format("contour route %.1e <= 1e-3", c));
  line.need(s <= 1e-3, format("spectral route %.1e <= 1e-3", s));
  const double f = check(runs.free, "completeness_contour").value;
  line.need(f <= 1e-10, format("kappa=0 contour %.1e <= 1e-10", f));
  return line;
}

Line annihilation(const KreinRuns& runs) {
  Line line;
  for (const auto& [name, r] : {std::pair{"r+-, imaginary", &runs.imag}, std::pair{"p,a, double", &runs.dbl},
                                std::pair{"r+-, real", &runs.real}}) {
    const double v = check(*r, "annihilation").value;
    line.need(v <= 1e-4, format("%s %.1e <= 1e-4", name, v));
  }
  return line;
}

Line nonnormality(const KreinRuns& runs) {
  Line line;
  double low = 1e300, s = 0.0;
  for (const auto* r : {&runs.imag, &runs.dbl, &runs.real}) {
    low = std::min(low, r->results["commutator_norm"].get<double>());
    s = std::max(s, check(*r, "s_identity").value);
  }
  const double f = runs.free.results["commutator_norm"].get<double>();
  line.need(low > 0.0, format("kappa>0 comm_norm >= %.2e > 0", low));
  line.need(f == 0.0, format("kappa=0 comm_norm %.1e == 0", f));
  s = std::max(s, check(runs.free, "s_identity").value);
  line.need(s <= 1e-10, format("S-identities %.1e <= 1e-10", s));
  return line;
}

}  // namespace

int main() {
  std::printf("spectral-dist %s acceptance\n", std::string(cli::kVersion).c_str());
  int failed = 0;
  const auto report = [&](int id, const char* title, const std::function<Line()>& run) {
    Line line;
    try {
      line = run();
    } catch (const std::exception& e) {
      line.ok = false;
      line.detail = std::string("exception: ") + e.what();
    }
    if (!line.ok) ++failed;
    std::printf("%s %2d %-34s %s\n", line.ok ? "PASS" : "FAIL", id, title, line.detail.c_str());
    std::fflush(stdout);
  };

  report(1, "resolvent equation", resolvent_equation);
  const cli::Report dist = cli::run_scenario(cli::parse_config(R"({"kind": "distcore_suite"})"));
  report(2, "Plemelj limit", [&] { return distcore_line(dist, 2); });
  report(3, "dbar(1/z) = pi delta", [&] { return distcore_line(dist, 3); });
  report(4, "principal value products", [&] { return distcore_line(dist, 4); });
  report(5, "matrix spectral distribution", matrix_structure);
  report(6, "A = 0 non-uniqueness", zero_extension);
  report(7, "unitary measure", unitary_measure);
  report(8, "Krein regimes", krein_regimes);

  const KreinRuns runs{cli::run_scenario(krein_config("0")), cli::run_scenario(krein_config("5")),
                       cli::run_scenario(krein_config("\"kappa_star\"")), cli::run_scenario(krein_config("3"))};
  report(9, "generalized eigenfunctions", [&] { return gram(runs); });
  report(10, "completeness", [&] { return completeness(runs); });
  report(11, "pole-coefficient annihilation", [&] { return annihilation(runs); });
  report(12, "non-normality", [&] { return nonnormality(runs); });

  std::printf("%d of 12 criteria passed\n", 12 - failed);
  return failed == 0 ? 0 : 1;
}
