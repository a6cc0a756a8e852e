#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "spectral/kernels.hpp"
#include "spectral/quad.hpp"
#include "spectral/testfn.hpp"

namespace spectral {

namespace {

constexpr Complex kI{0.0, 1.0};

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Complex ipow(Complex base, int k) {
  Complex r = 1.0;
  for (int i = 0; i < k; ++i) r *= base;
  return r;
}

double factorial(int k) {
  double r = 1.0;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

// Sum_j C(k,j) (sign*i)^(k-j) d_x^j d_y^(k-j) phi, times 2^-k.
Complex wirtinger_power(const TestFn2D& f, int k, Complex z, double sign) {
  if (k < 0) throw Error(ErrorCode::invalid_order, "negative order");
  Complex total{};
  for (const auto& t : f.terms()) {
    const auto cx = t.fx.taylor(z.real(), k);
    const auto cy = t.fy.taylor(z.imag(), k);
    Complex s{};
    for (int j = 0; j <= k; ++j) {
      const double dx = cx[j] * factorial(j);
      const double dy = cy[k - j] * factorial(k - j);
      s += binomial(k, j) * ipow(sign * kI, k - j) * (dx * dy);
    }
    total += t.coef * s;
  }
  return total * std::ldexp(1.0, -k);
}

}  // namespace

TestFn2D::TestFn2D(TestFn1D fx, TestFn1D fy, Complex coef) {
  terms_.push_back({coef, std::move(fx), std::move(fy)});
}

Rect TestFn2D::support() const {
  Rect r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
         std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& t : terms_) {
    if (t.coef == Complex{} || t.fx.is_zero() || t.fy.is_zero()) continue;
    const auto [ax, bx] = t.fx.support();
    const auto [ay, by] = t.fy.support();
    r.x0 = std::min(r.x0, ax);
    r.x1 = std::max(r.x1, bx);
    r.y0 = std::min(r.y0, ay);
    r.y1 = std::max(r.y1, by);
  }
  if (r.x0 > r.x1) return {0.0, 0.0, 0.0, 0.0};
  return r;
}

Complex TestFn2D::operator()(double x, double y) const {
  Complex s{};
  for (const auto& t : terms_) {
    const double vx = t.fx(x);
    if (vx == 0.0) continue;
    s += t.coef * (vx * t.fy(y));
  }
  return s;
}

Complex TestFn2D::partial(int jx, int jy, double x, double y) const {
  Complex s{};
  for (const auto& t : terms_) s += t.coef * (t.fx.derivative_at(x, jx) * t.fy.derivative_at(y, jy));
  return s;
}

Complex TestFn2D::d_power(int k, Complex z) const { return wirtinger_power(*this, k, z, -1.0); }

Complex TestFn2D::dbar_power(int k, Complex z) const { return wirtinger_power(*this, k, z, 1.0); }

TestFn2D TestFn2D::d() const {
  TestFn2D r;
  for (const auto& t : terms_) {
    r.terms_.push_back({0.5 * t.coef, t.fx.derivative(1), t.fy});
    r.terms_.push_back({-0.5 * kI * t.coef, t.fx, t.fy.derivative(1)});
  }
  return r;
}

TestFn2D TestFn2D::dbar() const {
  TestFn2D r;
  for (const auto& t : terms_) {
    r.terms_.push_back({0.5 * t.coef, t.fx.derivative(1), t.fy});
    r.terms_.push_back({0.5 * kI * t.coef, t.fx, t.fy.derivative(1)});
  }
  return r;
}

TestFn2D TestFn2D::times_z() const {
  TestFn2D r;
  for (const auto& t : terms_) {
    r.terms_.push_back({t.coef, t.fx.times_x(), t.fy});
    r.terms_.push_back({kI * t.coef, t.fx, t.fy.times_x()});
  }
  return r;
}

TestFn2D TestFn2D::operator+(const TestFn2D& o) const {
  TestFn2D r = *this;
  r.terms_.insert(r.terms_.end(), o.terms_.begin(), o.terms_.end());
  return r;
}

TestFn2D TestFn2D::operator*(const TestFn2D& o) const {
  TestFn2D r;
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) r.terms_.push_back({a.coef * b.coef, a.fx * b.fx, a.fy * b.fy});
  return r;
}

TestFn2D operator*(Complex s, const TestFn2D& f) {
  TestFn2D r = f;
  for (auto& t : r.terms_) t.coef *= s;
  return r;
}

Complex integrate_plane(const TestFn2D& f, int n) {
  Complex total{};
  for (const auto& t : f.terms()) {
    if (t.fx.is_zero() || t.fy.is_zero()) continue;
    total += t.coef * (integrate_line(t.fx, n) * integrate_line(t.fy, n));
  }
  return total;
}

namespace {

// Parameter range [lo, hi] (lo >= 0) along the ray z + rho*(cos th, sin th)
// inside the rectangle; empty when lo >= hi.
std::pair<double, double> ray_span(const Rect& r, double zx, double zy, double th) {
  const double dx = std::cos(th);
  const double dy = std::sin(th);
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  auto slab = [&](double z, double d, double a, double b) {
    if (std::fabs(d) < 1e-300) {
      if (z < a || z > b) hi = -1.0;
      return;
    }
    double t0 = (a - z) / d;
    double t1 = (b - z) / d;
    if (t0 > t1) std::swap(t0, t1);
    lo = std::max(lo, t0);
    hi = std::min(hi, t1);
  };
  slab(zx, dx, r.x0, r.x1);
  slab(zy, dy, r.y0, r.y1);
  return {lo, hi};
}

}  // namespace

Complex cauchy_transform(const TestFn2D& f, Complex z, int n_theta, int n_rho) {
  const Rect r = f.support();
  if (!(r.x0 < r.x1 && r.y0 < r.y1)) return 0.0;
  const double zx = z.real();
  const double zy = z.imag();
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> cuts;
  const double corners[4][2] = {{r.x0, r.y0}, {r.x1, r.y0}, {r.x1, r.y1}, {r.x0, r.y1}};
  for (const auto& c : corners) {
    const double dx = c[0] - zx;
    const double dy = c[1] - zy;
    if (dx == 0.0 && dy == 0.0) continue;
    double th = std::atan2(dy, dx);
    if (th < 0.0) th += two_pi;
    cuts.push_back(th);
  }
  // Rays along the rectangle edges through z also bound smooth sectors.
  for (double th : {0.0, 0.5 * std::numbers::pi, std::numbers::pi, 1.5 * std::numbers::pi})
    cuts.push_back(th);
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(cuts.front() + two_pi);

  // Radial panels: the support hull may be much wider than a term's support,
  // so split each chord into a few Gauss panels.
  constexpr int kRhoPanels = 4;
  Complex total{};
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double t0 = cuts[s];
    const double t1 = cuts[s + 1];
    if (t1 - t0 < 1e-14) continue;
    const auto mid = ray_span(r, zx, zy, 0.5 * (t0 + t1));
    if (!(mid.first < mid.second)) continue;
    const quad::Grid gt = quad::gauss_grid(t0, t1, n_theta);
    std::vector<double> re(gt.size());
    std::vector<double> im(gt.size());
    for (std::size_t i = 0; i < gt.size(); ++i) {
      const double th = gt.nodes[i];
      const auto [lo, hi] = ray_span(r, zx, zy, th);
      Complex inner{};
      if (lo < hi) {
        const double c = std::cos(th);
        const double sn = std::sin(th);
        const quad::Grid gr = quad::composite_grid(lo, hi, kRhoPanels, n_rho);
        std::vector<double> vr(gr.size());
        std::vector<double> vi(gr.size());
        for (std::size_t j = 0; j < gr.size(); ++j) {
          const Complex v = f(zx + gr.nodes[j] * c, zy + gr.nodes[j] * sn);
          vr[j] = v.real();
          vi[j] = v.imag();
        }
        inner = {quad::sum(gr, vr), quad::sum(gr, vi)};
        inner *= -std::polar(1.0, -th);
      }
      re[i] = inner.real();
      im[i] = inner.imag();
    }
    total += Complex(quad::sum(gt, re), quad::sum(gt, im));
  }
  return total;
}

}  // namespace spectral
