#include "spectral/distcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "spectral/kernels.hpp"
#include "spectral/quad.hpp"

namespace spectral::distcore {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

// Equal panels laid under every analytic piece before grading; resolves the
// exp(-1/s) layers at bump ends.
constexpr int kBasePanels = 8;

std::vector<double> panels_of(const TestFn1D& phi) {
  auto br = phi.breakpoints();
  if (br.size() < 2) throw Error(ErrorCode::invalid_interval, "test function needs a compact support");
  return br;
}

}  // namespace

Dist1D Dist1D::delta(double x0, int k) {
  Dist1D d;
  d.kind = Kind::delta;
  d.x0 = x0;
  d.order = k;
  return d;
}

Dist1D Dist1D::pv_power(double x0, int power) {
  Dist1D d;
  d.kind = Kind::pv_power;
  d.x0 = x0;
  d.order = power;
  return d;
}

Dist1D Dist1D::boundary(double x0, int sign) {
  Dist1D d;
  d.kind = Kind::boundary;
  d.x0 = x0;
  d.sign = sign >= 0 ? 1 : -1;
  return d;
}

Dist1D Dist1D::smooth(std::function<double(double)> f) {
  Dist1D d;
  d.kind = Kind::smooth;
  d.density = std::move(f);
  return d;
}

double pv_line(const TestFn1D& phi, double x0, int n) {
  if (phi.is_zero()) return 0.0;
  const auto br = panels_of(phi);
  const auto f = [&](double x) { return phi(x); };
  double total = 0.0;
  std::size_t i = 0;
  while (i + 1 < br.size()) {
    double a = br[i];
    double b = br[i + 1];
    std::size_t next = i + 1;
    // Keep the pole strictly inside its panel; merge across an interior break.
    if (x0 == b && i + 2 < br.size()) {
      b = br[i + 2];
      next = i + 2;
    }
    if (x0 > a && x0 < b) {
      total += quad::pv_integral_real(f, x0, a, b, n);
    } else {
      total += quad::integrate([&](double x) { return phi(x) / (x - x0); }, quad::gauss_grid(a, b, n));
    }
    i = next;
  }
  return total;
}

Complex regularized_cauchy(const TestFn1D& phi, double x0, double u, int n) {
  if (phi.is_zero()) return 0.0;
  const auto br = panels_of(phi);
  const double foci[] = {x0};
  std::vector<quad::Grid> parts;
  for (std::size_t i = 0; i + 1 < br.size(); ++i)
    parts.push_back(quad::graded_grid(br[i], br[i + 1], foci, 0.5 * std::fabs(u), n, kBasePanels));
  const quad::Grid g = quad::join(parts);
  std::vector<double> a(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) a[i] = -g.weights[i] * phi(g.nodes[i]);
  // sum w phi/(x - x0 + iu) = -sum w phi/((x0 - iu) - x)
  return kernels::cauchy_sum(g.nodes, a, {}, Complex(x0, -u), 1);
}

Complex apply(const Dist1D& d, const TestFn1D& phi, int n) {
  switch (d.kind) {
    case Dist1D::Kind::delta: {
      if (d.order < 0) throw Error(ErrorCode::invalid_order, "negative delta order");
      if (d.order > kMaxDeltaOrder) throw Error(ErrorCode::unsupported_order, "delta order above 12");
      const double s = (d.order % 2 == 0) ? 1.0 : -1.0;
      return s * phi.derivative_at(d.x0, d.order);
    }
    case Dist1D::Kind::pv_power: {
      if (d.order == 1) return pv_line(phi, d.x0, n);
      // P/x^2 = -(P/x)'
      if (d.order == 2) return pv_line(phi.derivative(1), d.x0, n);
      throw Error(ErrorCode::unsupported_order, "only P/x and P/x^2 are supported");
    }
    case Dist1D::Kind::boundary:
      return pv_line(phi, d.x0, n) - static_cast<double>(d.sign) * kI * kPi * phi(d.x0);
    case Dist1D::Kind::smooth: {
      if (phi.is_zero()) return 0.0;
      const auto br = panels_of(phi);
      double total = 0.0;
      for (std::size_t i = 0; i + 1 < br.size(); ++i)
        total += quad::integrate([&](double x) { return d.density(x) * phi(x); },
                                 quad::gauss_grid(br[i], br[i + 1], n));
      return total;
    }
  }
  return 0.0;
}

namespace {

void check_sequence(std::span<const double> u) {
  if (u.empty()) throw Error(ErrorCode::bad_sequence, "empty u sequence");
  const bool positive = u[0] > 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (u[j] == 0.0 || !std::isfinite(u[j]) || (u[j] > 0.0) != positive)
      throw Error(ErrorCode::bad_sequence, "u values must be nonzero with one sign");
    if (j > 0 && !(std::fabs(u[j]) < std::fabs(u[j - 1])))
      throw Error(ErrorCode::bad_sequence, "|u| must decrease strictly");
  }
}

double empirical_order(std::span<const double> u, const std::vector<Complex>& v, Complex limit) {
  const std::size_t m = std::min<std::size_t>(4, u.size());
  if (m < 2) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t used = 0;
  for (std::size_t j = u.size() - m; j < u.size(); ++j) {
    const double e = std::abs(v[j] - limit);
    if (e == 0.0) continue;
    const double x = std::log(std::fabs(u[j]));
    const double y = std::log(e);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++used;
  }
  if (used < 2) return std::numeric_limits<double>::infinity();
  return (used * sxy - sx * sy) / (used * sxx - sx * sx);
}

}  // namespace

PlemeljResult plemelj_limit(const TestFn1D& phi, std::span<const double> u_sequence, double x0) {
  check_sequence(u_sequence);
  PlemeljResult r;
  for (double u : u_sequence) r.values.push_back(regularized_cauchy(phi, x0, u));
  r.extrapolated = quad::richardson_limit(u_sequence, r.values);
  r.order = empirical_order(u_sequence, r.values, r.extrapolated);
  return r;
}

IdentityCheck dbar_identity_check(const TestFn2D& phi) {
  const Rect s = phi.support();
  if (!(s.x0 < 0.0 && 0.0 < s.x1 && s.y0 < 0.0 && 0.0 < s.y1))
    throw Error(ErrorCode::origin_outside, "0 must lie inside the support");
  IdentityCheck c;
  // -integral dbar(phi)/z = integral dbar(phi)(zeta)/(0 - zeta)
  c.lhs = cauchy_transform(phi.dbar(), 0.0, 128, 96);
  c.rhs = kPi * phi(0.0, 0.0);
  c.defect = std::abs(c.lhs - c.rhs) / std::max(1.0, std::abs(c.rhs));
  return c;
}

JumpFunctional continuous_jump(std::function<Complex(double)> f_plus,
                               std::function<Complex(double)> f_minus, double a, double b, int n) {
  return [=](const std::function<Complex(double)>& psi) {
    return quad::integrate_complex([&](double x) { return (f_plus(x) - f_minus(x)) * psi(x); },
                                   quad::composite_grid(a, b, 8, n));
  };
}

JumpFunctional point_jump(double x0, Complex weight) {
  return [=](const std::function<Complex(double)>& psi) { return weight * psi(x0); };
}

JumpFunctional no_jump() {
  return [](const std::function<Complex(double)>&) { return Complex{}; };
}

namespace {

std::vector<double> x_breaks(const TestFn2D& phi) {
  std::vector<double> br;
  for (const auto& t : phi.terms()) {
    const auto b = t.fx.breakpoints();
    br.insert(br.end(), b.begin(), b.end());
  }
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end()), br.end());
  return br;
}

// -integral over {|y| > eps} of F dbar(phi). dbar(phi) is a sum of separable
// terms, so its factors are tabulated once per axis.
Complex strip_excluded_integral(const std::function<Complex(Complex)>& F, const TestFn2D& dphi,
                                const Rect& s, const std::vector<double>& xb,
                                std::span<const double> hints, double eps) {
  constexpr int kN = 16;
  std::vector<quad::Grid> xparts;
  for (std::size_t i = 0; i + 1 < xb.size(); ++i)
    xparts.push_back(quad::graded_grid(xb[i], xb[i + 1], hints, 0.25 * eps, kN, kBasePanels));
  const quad::Grid gx = quad::join(xparts);
  std::vector<quad::Grid> yparts;
  const double focus_lo[] = {-eps};
  const double focus_hi[] = {eps};
  if (s.y1 > eps)
    yparts.push_back(quad::graded_grid(std::max(eps, s.y0), s.y1, focus_hi, 0.5 * eps, kN, kBasePanels));
  if (s.y0 < -eps)
    yparts.push_back(quad::graded_grid(s.y0, std::min(-eps, s.y1), focus_lo, 0.5 * eps, kN, kBasePanels));
  const quad::Grid gy = quad::join(yparts);
  const auto& terms = dphi.terms();
  std::vector<std::vector<double>> tx(terms.size()), ty(terms.size());
  for (std::size_t t = 0; t < terms.size(); ++t) {
    for (double x : gx.nodes) tx[t].push_back(terms[t].fx(x));
    for (double y : gy.nodes) ty[t].push_back(terms[t].fy(y));
  }
  std::vector<double> re(gx.size()), im(gx.size());
  Complex total{};
  for (std::size_t j = 0; j < gy.size(); ++j) {
    const double y = gy.nodes[j];
    for (std::size_t i = 0; i < gx.size(); ++i) {
      Complex d{};
      for (std::size_t t = 0; t < terms.size(); ++t) d += terms[t].coef * (tx[t][i] * ty[t][j]);
      const Complex v = d == Complex{} ? Complex{} : F(Complex(gx.nodes[i], y)) * d;
      re[i] = v.real();
      im[i] = v.imag();
    }
    total += gy.weights[j] * Complex(quad::sum(gx, re), quad::sum(gx, im));
  }
  return -total;
}

}  // namespace

JumpCheck jump_formula_check(const std::function<Complex(Complex)>& F, const JumpFunctional& jump,
                             const TestFn2D& phi, std::span<const double> x_hints) {
  const Rect s = phi.support();
  const TestFn2D dphi = phi.dbar();
  const auto xb = x_breaks(phi);
  JumpCheck c;
  if (xb.size() < 2) return c;
  for (int k = 0; k <= kJumpRefinements; ++k) {
    const double eps = kJumpStrip * std::ldexp(1.0, -k);
    const Complex v = strip_excluded_integral(F, dphi, s, xb, x_hints, eps);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw Error(ErrorCode::nonfinite_value, "F is not finite on the quadrature grid");
    c.eps.push_back(eps);
    c.lhs_eps.push_back(v);
  }
  c.lhs = quad::richardson_limit(c.eps, c.lhs_eps);
  c.rhs = 0.5 * kI * jump([&](double x) { return phi(x, 0.0); });
  c.defect = std::abs(c.lhs - c.rhs) / std::max(1.0, std::abs(c.rhs));
  return c;
}

PvProductCheck pv_product_check(const TestFn1D& phi1, const TestFn1D& phi2, double omega,
                                std::span<const double> u_sequence) {
  check_sequence(u_sequence);
  for (const TestFn1D* f : {&phi1, &phi2}) {
    const auto s = f->support();
    const bool on_edge = (omega == s.first || omega == s.second);
    if (on_edge || !std::isfinite(omega))
      throw Error(ErrorCode::omega_outside, "omega sits on a support endpoint");
  }
  const double sign = u_sequence[0] > 0 ? 1.0 : -1.0;
  const double pv1 = pv_line(phi1, omega, 256);
  const double pv2 = pv_line(phi2, omega, 256);
  const double f1 = phi1(omega);
  const double f2 = phi2(omega);
  std::vector<Complex> d;
  for (double u : u_sequence)
    d.push_back(regularized_cauchy(phi1, omega, u) * regularized_cauchy(phi2, omega, u));
  PvProductCheck c;
  c.extrapolated = quad::richardson_limit(u_sequence, d);
  c.lhs = pv1 * pv2;
  c.rhs = c.extrapolated + sign * kI * kPi * (f1 * pv2 + f2 * pv1) + kPi * kPi * f1 * f2;
  const double scale = std::max({1.0, std::abs(c.lhs), kPi * kPi * std::fabs(f1 * f2)});
  c.defect = std::abs(c.lhs - c.rhs) / scale;
  return c;
}

}  // namespace spectral::distcore
