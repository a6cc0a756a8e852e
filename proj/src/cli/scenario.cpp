#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "params.hpp"
#include "spectral/distcore.hpp"
#include "spectral/matspec.hpp"
#include "spectral/testfn.hpp"

namespace spectral::cli {
namespace {

using namespace detail;
using Vec = std::vector<Complex>;

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};
// Dense 2n x 2n products get expensive; the normality check stops here.
constexpr int kDenseMaxN = 512;

class Checks {
 public:
  explicit Checks(const ScenarioConfig& config) : config_(config) {}

  void at_most(const std::string& name, const std::string& anchor, double value, double tol,
               const std::string& note = {}) {
    tol = override(name, tol);
    add({name, anchor, "<=", value, tol, std::isfinite(value) && value <= tol, note});
  }

  void above(const std::string& name, const std::string& anchor, double value, double tol,
             const std::string& note = {}) {
    tol = override(name, tol);
    add({name, anchor, ">", value, tol, std::isfinite(value) && value > tol, note});
  }

  // at_most with an extra condition that can fail the check on its own.
  void at_most_if(bool ok, const std::string& name, const std::string& anchor, double value, double tol,
                  const std::string& note) {
    tol = override(name, tol);
    add({name, anchor, "<=", value, tol, ok && std::isfinite(value) && value <= tol, ok ? std::string() : note});
  }

  std::vector<CheckRecord> take() { return std::move(records_); }

 private:
  double override(const std::string& name, double tol) const {
    const auto it = config_.tolerances.find(name);
    return it == config_.tolerances.end() ? tol : it->second;
  }
  void add(CheckRecord r) { records_.push_back(std::move(r)); }

  const ScenarioConfig& config_;
  std::vector<CheckRecord> records_;
};

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json table(const std::string& description, std::vector<std::string> columns) {
  Json t = Json::object();
  t["description"] = description;
  t["columns"] = std::move(columns);
  t["rows"] = Json::array();
  return t;
}

// ---- krein -----------------------------------------------------------------

double l2(const krein::KreinModel& m, const Vec& v) {
  double s = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) s += m.weights()[j] * std::norm(v[j]);
  return std::sqrt(s);
}

Vec minus(const Vec& a, const Vec& b) {
  Vec d(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) d[j] = a[j] - b[j];
  return d;
}

Vec times(Complex s, Vec v) {
  for (auto& x : v) x *= s;
  return v;
}

Vec random_vec(const krein::KreinModel& m, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vec v(m.size());
  for (auto& x : v) x = {u(rng), u(rng)};
  return v;
}

Vec as_complex(const std::vector<double>& v) { return Vec(v.begin(), v.end()); }

double discrete_structure(const krein::KreinModel& m, const krein::DiscreteSpectrum& ds, std::mt19937_64& rng) {
  using namespace krein;
  double worst = 0.0;
  if (!ds.residues.empty()) {
    const LowRank& rp = ds.residues[0];
    const LowRank& rm = ds.residues[1];
    const double np = op_norm(m, rp), nm = op_norm(m, rm);
    worst = std::max({std::abs(trace(m, rp) - 1.0), std::abs(trace(m, rm) - 1.0),
                      op_norm(m, compose(m, rp, rm)) / (np * nm), op_norm(m, compose(m, rm, rp)) / (np * nm)});
    for (int t = 0; t < 3; ++t) {
      const Vec v = random_vec(m, rng);
      for (std::size_t k = 0; k < 2; ++k) {
        const Vec rv = apply(m, ds.residues[k], v);
        const double n = l2(m, rv);
        worst = std::max(worst, l2(m, minus(apply(m, ds.residues[k], rv), rv)) / n);
        worst = std::max(worst, l2(m, minus(apply_h(m, rv), times(ds.grid_points[k], rv))) / n);
      }
    }
  }
  if (ds.jordan) {
    const LowRank& a = ds.jordan->a;
    const LowRank& p = ds.jordan->p;
    const double na = op_norm(m, a), np = op_norm(m, p);
    for (int t = 0; t < 3; ++t) {
      const Vec v = random_vec(m, rng);
      const double nv = l2(m, v);
      const Vec av = apply(m, a, v), pv = apply(m, p, v);
      worst = std::max(worst, l2(m, minus(apply(m, p, pv), pv)) / (np * np * nv));
      worst = std::max(worst, l2(m, apply(m, a, av)) / (na * na * nv));
      worst = std::max(worst, l2(m, minus(apply(m, a, pv), av)) / (na * np * nv));
      worst = std::max(worst, l2(m, minus(apply(m, p, av), av)) / (na * np * nv));
      worst = std::max(worst, l2(m, minus(apply_h(m, pv), av)) / (np * nv));
    }
  }
  return worst;
}

void run_krein(const ScenarioConfig& config, Report& rep, Checks& ck) {
  using namespace krein;
  Json unused;
  const KreinParams p = parse_krein(config.parameters, "config", unused);
  const KreinModel m = KreinModel::build(p.c, p.kappa, p.bump, p.n);
  const CharFunction cf = classify(m);
  const bool unsupported = cf.regime == Regime::none && p.kappa > 0.0;
  std::mt19937_64 rng(p.seed);
  rep.grid_sizes = {p.n};

  const TestFn1D phi = TestFn1D::bump(p.phi_a, p.phi_b);
  const TestFn1D psi = TestFn1D::bump(-p.phi_b, -p.phi_a);
  const TestFn1D f = phi + 0.5 * psi;

  Json& res = rep.results;
  res["kappa"] = p.kappa;
  res["kappa_star"] = kappa_star(p.c, p.bump);
  res["kappa_one"] = kappa_one(p.c, p.bump);
  res["regime"] = unsupported ? "unsupported" : std::string(to_string(cf.regime));
  res["c_at_0"] = cf.c_at_0;
  res["c_at_1"] = cf.c_at_1;
  Json zeros = Json::array();
  for (const Zero& z : cf.zeros) zeros.push_back({z.location.real(), z.location.imag(), z.multiplicity});
  res["zeros"] = zeros;
  if (cf.regime == Regime::imaginary_pair) res["u0"] = cf.zeros[0].location.imag();
  if (cf.regime == Regime::real_pair) res["x0"] = cf.zeros[0].location.real();

  ck.at_most("regime", "zeros of C: imaginary pair if C(0) < 0, double zero if C(0) = 0, real pair if C(1) < 0",
             unsupported ? 1.0 : 0.0, 0.0,
             unsupported ? "C(0) > 0 and C(1) >= 0: this case is not covered by the regime analysis" : "");

  // Krein's formula: (z - H) R(z) f = f
  {
    std::uniform_real_distribution<double> rad(0.1, 2.0 * p.c), ang(0.0, 2.0 * kPi);
    double worst = 0.0;
    for (int done = 0, tries = 0; done < 20 && tries < 200; ++tries) {
      Complex z = std::polar(rad(rng), ang(rng));
      if (std::abs(z.imag()) < 0.05) z += Complex(0.0, 0.1);
      const Vec v = random_vec(m, rng);
      Vec r;
      try {
        r = resolvent_apply(m, z, v);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::spectral_point) throw;
        continue;
      }
      const Vec hr = apply_h(m, r);
      Vec d(v.size());
      for (std::size_t j = 0; j < v.size(); ++j) d[j] = z * r[j] - hr[j] - v[j];
      worst = std::max(worst, l2(m, d) / l2(m, v));
      ++done;
    }
    ck.at_most("krein_identity", "Krein's formula R(z) = R_Omega + R_Omega|g><h|R_Omega / C(z)", worst, 1e-11);
  }
  {
    const Complex z1 = 3.0, z2 = 2.0 * kI;
    const Vec v = random_vec(m, rng);
    const Vec lhs = minus(resolvent_apply(m, z1, v), resolvent_apply(m, z2, v));
    const Vec rhs = times(z2 - z1, resolvent_apply(m, z1, resolvent_apply(m, z2, v)));
    ck.at_most("resolvent_equation", "resolvent equation R(z1) - R(z2) = (z2 - z1) R(z1) R(z2)",
               l2(m, minus(lhs, rhs)) / l2(m, v), 1e-11);
  }
  {
    double worst = 0.0;
    for (const Zero& z : cf.zeros) worst = std::max(worst, std::abs(char_eval(m, z.location)));
    ck.at_most("zero_residual", "zeros of C(z) are the discrete eigenvalues of H", worst, 1e-12,
               cf.zeros.empty() ? "no zeros" : "");
  }

  const DiscreteSpectrum ds = unsupported ? DiscreteSpectrum{} : discrete_spectrum(m, cf);
  ck.at_most("discrete_structure",
             "residues r_+- are projectors with r_+ r_- = 0; at a double zero p^2 = p, a^2 = 0, ap = pa = a, Hp = a",
             discrete_structure(m, ds, rng), 1e-8,
             ds.residues.empty() && !ds.jordan ? "no discrete spectrum" : "");

  const Vec right = as_complex(eigenfunction_smear(m, phi, Side::right));
  const auto left = eigenfunction_smear(m, phi, Side::left);
  {
    const TestFn1D xphi = TestFn1D::polynomial({0.0, 1.0}) * phi;
    const Vec rx = as_complex(eigenfunction_smear(m, xphi, Side::right));
    const auto lx = eigenfunction_smear(m, xphi, Side::left);
    double worst = l2(m, minus(apply_h(m, right), rx)) / l2(m, rx);
    Complex gl{};
    for (std::size_t j = 0; j < m.size(); ++j) gl += m.weights()[j] * m.g()[j] * left[j];
    Vec d(m.size());
    for (std::size_t j = 0; j < m.size(); ++j) d[j] = m.nodes()[j] * left[j] + m.h()[j] * gl - lx[j];
    worst = std::max(worst, l2(m, d) / l2(m, as_complex(lx)));
    ck.at_most("eigen_relation", "generalized eigenvectors: H|alpha_x> = x|alpha_x>, <alpha'_x|H = x<alpha'_x|", worst,
               1e-4);
  }
  {
    std::vector<LowRank> ops = ds.residues;
    if (ds.jordan) {
      ops.push_back(ds.jordan->p);
      ops.push_back(ds.jordan->a);
    }
    double worst = 0.0;
    for (const TestFn1D& t : {phi, psi}) {
      const Vec r = as_complex(eigenfunction_smear(m, t, Side::right));
      const Vec l = as_complex(eigenfunction_smear(m, t, Side::left));
      for (const LowRank& op : ops) {
        const double s = op_norm(m, op);
        worst = std::max(worst, l2(m, apply(m, op, r)) / (s * l2(m, r)));
        worst = std::max(worst, l2(m, apply_left(m, op, l)) / (s * l2(m, l)));
      }
    }
    ck.at_most("annihilation", "pole coefficients annihilate the continuum eigenvectors", worst, 1e-4,
               ops.empty() ? "no discrete spectrum" : "");
  }
  {
    double worst = 0.0;
    for (int k = 1; k <= 5; ++k) {
      const double x = p.phi_a + (p.phi_b - p.phi_a) * k / 6.0;
      worst = std::max({worst, mu_apply(m, x, phi, f).defect, mu_apply(m, -x, f, phi).defect});
    }
    ck.at_most("mu_factorization", "mu(x) = |alpha_x><alpha'_x|", worst, 1e-8);
  }
  {
    const GramResult g = orthogonality_gram(m, phi, phi);
    res["gram_lhs"] = g.lhs;
    res["gram_rhs"] = g.rhs;
    ck.at_most("gram", "orthogonality relation <alpha'_x|alpha_y> = delta(x - y)", g.defect, 1e-3);
    const GramResult d = orthogonality_gram(m, phi, psi);
    const double scale = std::sqrt(integrate_line(phi * phi) * integrate_line(psi * psi));
    ck.at_most("gram_disjoint", "orthogonality relation, disjoint supports", std::abs(d.lhs) / scale, 1e-4);
  }
  {
    const double r_big = p.r_big > 0.0 ? p.r_big : 3.0 * p.c;
    const CompletenessResult c = completeness_apply(m, unsupported ? CharFunction{} : cf, f, r_big);
    const double tol = p.kappa == 0.0 ? 1e-10 : 1e-3;
    ck.at_most("completeness_contour", "completeness: (1/2 pi i) contour integral of R(z) is the identity",
               c.contour_defect, tol);
    ck.at_most("completeness_spectral",
               "the spectral distribution is complete: discrete part plus integral of |alpha_x><alpha'_x| is the identity",
               c.spectral_defect, tol);
  }
  {
    const int nd = std::min(p.n, kDenseMaxN);
    const NonnormalityResult nn =
        nonnormality_check(nd == p.n ? m : KreinModel::build(p.c, p.kappa, p.bump, nd));
    const std::string note = nd == p.n ? "" : "evaluated at n = " + std::to_string(nd);
    res["commutator_norm"] = nn.comm_norm;
    res["naive_s_identity_defect"] = nn.naive_identity_defect;
    ck.at_most("s_identity", "S H H* S = S Omega^2 S + |Omega h><g| + |g><Omega h| + ||h||^2 |g><g| and S H* H S = S Omega^2 S",
               nn.s_identity_defect, 1e-10, note);
    const double rel = nn.h_norm > 0.0 ? nn.comm_norm / (nn.h_norm * nn.h_norm) : 0.0;
    if (p.kappa > 0.0)
      ck.above("commutator", "H is not normal: ||H H* - H* H|| / ||H||^2", rel, 1e-6, note);
    else
      ck.at_most("commutator", "H = Omega is normal: ||H H* - H* H|| / ||H||^2", rel, 0.0, note);
  }
  {
    std::vector<Vec> vs;
    for (int k = 0; k < 3; ++k) vs.push_back(random_vec(m, rng));
    const SymmetryResult s = symmetry_check(m, Complex(0.5, 0.7), vs);
    res["naive_symmetry_defect"] = s.naive_defect;
    ck.at_most("symmetry", "J R(z) J = -R(-z) with J f(w) = f(-w), and K R(z) K = R(conj z)* with K = sign(w)",
               std::max(s.reflection_defect, s.sign_defect), 1e-10);
  }
  {
    const auto rows = discrete_crosscheck(m, unsupported ? CharFunction{} : cf, p.n_sequence);
    Json conv = table("distance of the zeros of the grid function C_N from the zeros of C", {"n", "gap"});
    // A double zero splits into +-sqrt(eps)-sized pairs on the grid; it is
    // simple as a zero in z^2, so the gap is compared there.
    const bool dbl = cf.regime == Regime::double_zero;
    const auto measure = [dbl](double gap) { return dbl ? gap * gap : gap; };
    bool monotone = true;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      conv["rows"].push_back({rows[k].n, rows[k].gap});
      if (k > 0 && measure(rows[k].gap) > std::max(measure(rows[k - 1].gap), 1e-13)) monotone = false;
    }
    for (int n : p.n_sequence) rep.grid_sizes.push_back(n);
    rep.data["convergence"] = conv;
    ck.at_most_if(monotone, "crosscheck", "zeros of the discrete secular function converge to the zeros of C",
                  rows.empty() ? 0.0 : measure(rows.back().gap), 1e-8,
                  std::string("gap sequence is not decreasing") + (dbl ? "; double zero: gap measured in z^2" : ""));
  }

  // plot data
  {
    Json cb = table("C(x +- i0) = C1(x) +- i pi C2(x) on 512 midpoints of (-c-0.5, c+0.5)", {"x", "C1", "piC2"});
    const double a = -p.c - 0.5, w = 2.0 * p.c + 1.0;
    for (int k = 0; k < 512; ++k) {
      const double x = a + w * (k + 0.5) / 512.0;
      const BoundaryValues b = char_boundary(m, x);
      cb["rows"].push_back({x, b.c1, kPi * b.c2});
    }
    rep.data["C_boundary"] = cb;

    Json mu = table("<f|mu(x)|f> and the factorised <f|alpha_x><alpha'_x|f> on 128 midpoints of each slit, f = phi + psi/2",
                    {"x", "mu", "factorized"});
    for (double sign : {-1.0, 1.0})
      for (int k = 0; k < 128; ++k) {
        const int kk = sign < 0 ? 127 - k : k;
        const double x = sign * (1.0 + (p.c - 1.0) * (kk + 0.5) / 128.0);
        const MuPairing mp = mu_apply(m, x, f, f);
        mu["rows"].push_back({x, mp.value, mp.factorized});
      }
    rep.data["mu_diag"] = mu;

    Json ef = table("smeared generalized eigenvectors of phi on the grid nodes", {"omega", "right", "left"});
    for (std::size_t j = 0; j < m.size(); ++j) ef["rows"].push_back({m.nodes()[j], right[j].real(), left[j]});
    rep.data["eigenfunction"] = ef;
  }
}

// ---- matrix ----------------------------------------------------------------

TestFn2D generic_phi(double s, int which) {
  if (which == 0)
    return TestFn2D(TestFn1D::bump(-2.0 * s, 3.0 * s), TestFn1D::bump(-2.5 * s, 2.0 * s)) +
           TestFn2D(TestFn1D::rational_bump(-3.0 * s, 2.5 * s, {1.0, 0.5}, 1), TestFn1D::bump(-3.0 * s, 3.0 * s),
                    Complex(0.3, -0.7));
  return TestFn2D(TestFn1D::bump(-1.5 * s, 4.0 * s), TestFn1D::bump(-2.0 * s, 2.5 * s), Complex(1.0, 0.4)).times_z() +
         TestFn2D(TestFn1D::bump(-2.0 * s, 4.5 * s), TestFn1D::bump(-1.8 * s, 1.9 * s));
}

void run_matrix(const ScenarioConfig& config, Report& rep, Checks& ck) {
  using namespace matspec;
  Json unused;
  const MatrixParams p = parse_matrix(config.parameters, "config", unused);
  const CMatrix& a = p.a;
  const std::size_t n = a.dim();
  const double radius = gershgorin_radius(a);
  rep.grid_sizes = {p.contour_points};
  std::mt19937_64 rng(p.seed);
  {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
      const Complex z1 = std::polar(radius + 0.5 + 2.5 * u(rng), 2.0 * kPi * u(rng));
      const Complex z2 = std::polar(radius + 0.5 + 2.5 * u(rng), 2.0 * kPi * u(rng));
      worst = std::max(worst, resolvent_equation_residual(a, z1, z2));
    }
    ck.at_most("resolvent_equation", "resolvent equation R(z1) - R(z2) = (z2 - z1) R(z1) R(z2)", worst, 1e-12);
  }
  const SpectralDataMatrix sd = spectral_data(a, p.contour_points);
  {
    double worst = 0.0;
    CMatrix sum(n);
    for (std::size_t i = 0; i < sd.eigenvalues.size(); ++i) {
      const CMatrix& pi = sd.projectors[i];
      const CMatrix& ai = sd.nilpotents[i];
      const double s = std::max(1.0, pi.frobenius());
      worst = std::max({worst, (pi * pi - pi).frobenius() / s, power(ai, sd.orders[i]).frobenius() / s,
                        (ai * pi - ai).frobenius() / s, (pi * ai - ai).frobenius() / s});
      sum += pi;
    }
    worst = std::max(worst, (sum - CMatrix::identity(n)).frobenius());
    ck.at_most("eigen_structure", "Jordan normal form: p^2 = p, a^n = 0, ap = pa = a, sum of p = I", worst, 1e-9);
  }
  {
    double worst = 0.0;
    for (std::size_t i = 0; i < sd.eigenvalues.size(); ++i)
      for (std::size_t j = 0; j < sd.eigenvalues.size(); ++j) {
        if (i == j) continue;
        const double s = std::max(1.0, sd.projectors[i].frobenius() * sd.projectors[j].frobenius());
        for (int k = 0; k < sd.orders[i]; ++k)
          for (int l = 0; l < sd.orders[j]; ++l) {
            const CMatrix bk = k == 0 ? sd.projectors[i] : power(sd.nilpotents[i], k);
            const CMatrix cl = l == 0 ? sd.projectors[j] : power(sd.nilpotents[j], l);
            worst = std::max(worst, (bk * cl).frobenius() / s);
          }
      }
    ck.at_most("two_pole", "Laurent coefficients at two isolated poles: b_k c_l = 0", worst, 1e-9,
               sd.eigenvalues.size() < 2 ? "single eigenvalue cluster" : "");
  }
  {
    const double s = radius + 1.0;
    ck.at_most("multiplicativity", "the spectral distribution is multiplicative: M(phi1) M(phi2) = M(phi1 phi2)",
               multiplicativity_check(sd, generic_phi(s, 0), generic_phi(s, 1)), 1e-11);
  }
  ck.at_most("completeness", "M is complete: (1/2 pi i) contour integral of R(z) = I",
             completeness_contour(a, radius + 1.0, p.contour_points), 1e-10);
  if (p.extension) {
    const CMatrix& c = *p.extension;
    const double c2 = (c * c).frobenius();
    const double d = nonunique_extension_defect(c);
    rep.results["extension_c_squared"] = c2;
    if (c2 <= 1e-12)
      ck.at_most("extension", "A = 0 extension M(phi) = phi(0) + C dbar phi(0) is multiplicative when C^2 = 0", d, 1e-12);
    else
      ck.above("extension", "A = 0 extension is not multiplicative when C^2 != 0", d, 1e-12);
  }
  Json ev = Json::array();
  for (Complex z : sd.eigenvalues) ev.push_back(complex_json(z));
  rep.results["dimension"] = n;
  rep.results["gershgorin_radius"] = radius;
  rep.results["eigenvalues"] = ev;
  rep.results["orders"] = sd.orders;
}

// ---- unitary ---------------------------------------------------------------

void run_unitary(const ScenarioConfig& config, Report& rep, Checks& ck) {
  using namespace matspec;
  Json unused;
  const UnitaryParams p = parse_unitary(config.parameters, "config", unused);
  const auto phi = [&](double t) {
    Complex s{};
    for (const auto& [l, c] : p.fourier) s += c * std::polar(1.0, l * t);
    return s;
  };
  int degree = 0;
  for (const auto& term : p.fourier) degree = std::max(degree, std::abs(term.first));
  const CMatrix smear = unitary_spectral_smear(p.u, phi, p.L);
  const SpectralDataMatrix sd = spectral_data(p.u);
  CMatrix exact(p.u.dim());
  Json angles = Json::array();
  for (std::size_t i = 0; i < sd.eigenvalues.size(); ++i) {
    const double t = std::arg(sd.eigenvalues[i]);
    angles.push_back(t);
    exact += phi(t) * sd.projectors[i];
  }
  rep.grid_sizes = {p.L};
  rep.results["degree"] = degree;
  rep.results["L"] = p.L;
  rep.results["angles"] = angles;
  ck.at_most("fourier_smear", "unitary spectral measure: M(phi) = sum_l U^l phi_hat(l) equals sum phi(theta_i) p_i",
             (smear - exact).frobenius(), 1e-12, p.L < degree ? "L is below the degree of phi" : "");
  const auto sq = [&](double t) { return phi(t) * phi(t); };
  ck.at_most("multiplicativity", "unitary spectral measure is multiplicative: M(phi)^2 = M(phi^2)",
             (smear * smear - unitary_spectral_smear(p.u, sq, 2 * p.L)).frobenius(), 1e-12);
}

// ---- distcore --------------------------------------------------------------

void run_distcore(const ScenarioConfig& config, Report& rep, Checks& ck) {
  using namespace distcore;
  Json unused;
  const DistcoreParams p = parse_distcore(config.parameters, "config", unused);
  const TestFn1D fns[] = {
      TestFn1D::bump(-1, 1),
      TestFn1D::rational_bump(-0.8, 1.1, {1.0, 0.6, 0.2}, 0),
      TestFn1D::bump(-0.3, 1.7),
      TestFn1D::bump(-1, 1) * TestFn1D::polynomial({1.0, 1.0, 1.0}),
      TestFn1D::plateau(-1.5, -0.5, 0.5, 1.5),
  };
  double worst = 0.0, order = 1e300;
  Json pl = Json::array();
  for (const TestFn1D& f : fns) {
    const PlemeljResult r = plemelj_limit(f, p.plemelj_u);
    const Complex expect(pv_line(f, 0.0), -kPi * f(0.0));
    const double d = std::abs(r.extrapolated - expect);
    worst = std::max(worst, d);
    order = std::min(order, r.order);
    pl.push_back({{"limit", complex_json(r.extrapolated)}, {"defect", d}, {"order", r.order}});
  }
  rep.results["plemelj"] = pl;
  ck.at_most("plemelj", "1/(x + i0) = P/x - i pi delta(x)", worst, 1e-6);
  ck.above("plemelj_order", "boundary values are approached at first order in u", order, 0.9);

  const TestFn2D dbars[] = {
      TestFn2D(TestFn1D::bump(-1, 1), TestFn1D::bump(-1, 1)),
      TestFn2D(TestFn1D::rational_bump(-0.8, 1.1, {1.0, 0.6, 0.2}, 0), TestFn1D::bump(-1, 1.2)),
      TestFn2D(TestFn1D::plateau(-1.5, -0.5, 0.5, 1.5), TestFn1D::bump(-0.7, 0.9)),
  };
  worst = 0.0;
  for (const TestFn2D& f : dbars) worst = std::max(worst, dbar_identity_check(f).defect);
  ck.at_most("dbar", "dbar(1/z) = pi delta(z)", worst, 1e-6);

  struct Triple {
    TestFn1D a, b;
    double omega;
  };
  const Triple triples[] = {
      {TestFn1D::bump(-1, 1), TestFn1D::bump(-1, 1), 0.0},
      {TestFn1D::rational_bump(-0.8, 1.1, {1.0, 0.6, 0.2}, 0), TestFn1D::bump(-0.3, 0.9), 0.1},
      {TestFn1D::bump(-1, 1.5), TestFn1D::bump(-0.5, 2), 0.7},
  };
  worst = 0.0;
  for (const Triple& t : triples) worst = std::max(worst, pv_product_check(t.a, t.b, t.omega, p.product_u).defect);
  ck.at_most("pv_product",
             "P/(x-w) P/(y-w) = (1/(x-w+i0) + i pi delta)(1/(y-w+i0) + i pi delta), grouped form", worst, 1e-4);
  rep.grid_sizes = {static_cast<int>(p.plemelj_u.size()), static_cast<int>(p.product_u.size())};
}

}  // namespace

std::vector<std::string> check_names(const ScenarioConfig& config) {
  switch (config.kind) {
    case Kind::krein:
      return {"regime", "krein_identity", "resolvent_equation", "zero_residual", "discrete_structure",
              "eigen_relation", "annihilation", "mu_factorization", "gram", "gram_disjoint",
              "completeness_contour", "completeness_spectral", "s_identity", "commutator", "symmetry",
              "crosscheck"};
    case Kind::matrix: {
      std::vector<std::string> names = {"resolvent_equation", "eigen_structure", "two_pole", "multiplicativity",
                                        "completeness"};
      if (config.parameters.contains("extension")) names.push_back("extension");
      return names;
    }
    case Kind::unitary: return {"fourier_smear", "multiplicativity"};
    case Kind::distcore_suite: return {"plemelj", "plemelj_order", "dbar", "pv_product"};
  }
  return {};
}

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.passed; });
}

Report run_scenario(const ScenarioConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  Report rep;
  rep.kind = config.kind;
  rep.name = config.name;
  rep.parameters = config.parameters;
  Checks ck(config);
  switch (config.kind) {
    case Kind::krein: run_krein(config, rep, ck); break;
    case Kind::matrix: run_matrix(config, rep, ck); break;
    case Kind::unitary: run_unitary(config, rep, ck); break;
    case Kind::distcore_suite: run_distcore(config, rep, ck); break;
  }
  rep.checks = ck.take();
  rep.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace spectral::cli
