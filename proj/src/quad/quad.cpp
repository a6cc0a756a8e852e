#include "spectral/quad.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "spectral/kernels.hpp"
#include "spectral/parallel.hpp"
#include "spectral/summation.hpp"

namespace spectral::quad {

namespace {

struct Rule01 {
  std::vector<double> x;  // ascending on (-1, 1)
  std::vector<double> w;
};

Rule01 compute_legendre(int n) {
  Rule01 r;
  r.x.resize(n);
  r.w.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::fabs(dz) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0;
    double p1 = z;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (z * p1 - p0) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    r.x[n - 1 - i] = z;
    r.x[i] = -z;
    r.w[i] = w;
    r.w[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.x[n / 2] = 0.0;
  return r;
}

const Rule01& legendre(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<Rule01>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Rule01>(compute_legendre(n));
  return *slot;
}

void append_panel(Grid& g, double a, double b, int n) {
  const Rule01& r = legendre(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  for (int i = 0; i < n; ++i) {
    g.nodes.push_back(mid + half * r.x[i]);
    g.weights.push_back(half * r.w[i]);
  }
}

void check_interval(double a, double b) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    throw Error(ErrorCode::invalid_interval, "need a < b");
}

void check_finite(double v) {
  if (!std::isfinite(v)) throw Error(ErrorCode::nonfinite_value, "integrand is not finite");
}

}  // namespace

Grid gauss_grid(double a, double b, int n) {
  check_interval(a, b);
  if (n < 2) throw Error(ErrorCode::invalid_order, "need n >= 2");
  Grid g;
  g.a = a;
  g.b = b;
  g.rule = Rule::gauss_legendre;
  append_panel(g, a, b, n);
  return g;
}

Grid composite_grid(double a, double b, int panels, int n) {
  check_interval(a, b);
  if (n < 2 || panels < 1) throw Error(ErrorCode::invalid_order, "need n >= 2, panels >= 1");
  Grid g;
  g.a = a;
  g.b = b;
  g.rule = Rule::composite;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double hi = (p + 1 == panels) ? b : a + (p + 1) * h;
    append_panel(g, lo, hi, n);
  }
  return g;
}

Grid graded_grid(double a, double b, std::span<const double> foci, double min_width, int n,
                 int base_panels) {
  check_interval(a, b);
  if (n < 2 || base_panels < 1) throw Error(ErrorCode::invalid_order, "need n >= 2");
  std::vector<double> br{a, b};
  for (int p = 1; p < base_panels; ++p) br.push_back(a + (b - a) * p / base_panels);
  const double width = std::max(min_width, 1e-15 * (b - a));
  for (double f : foci) {
    if (!(f > a - (b - a)) || !(f < b + (b - a))) continue;
    if (f > a && f < b) br.push_back(f);
    for (double d = width; d < (b - a); d *= 2.0) {
      if (f - d > a && f - d < b) br.push_back(f - d);
      if (f + d > a && f + d < b) br.push_back(f + d);
    }
  }
  std::sort(br.begin(), br.end());
  std::vector<double> cuts;
  for (double x : br) {
    if (cuts.empty() || x - cuts.back() > 0.25 * width) cuts.push_back(x);
  }
  cuts.back() = b;
  Grid g;
  g.a = a;
  g.b = b;
  g.rule = Rule::composite;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) append_panel(g, cuts[i], cuts[i + 1], n);
  return g;
}

Grid join(const std::vector<Grid>& parts) {
  Grid g;
  g.rule = Rule::composite;
  if (parts.empty()) return g;
  g.a = parts.front().a;
  g.b = parts.back().b;
  for (const auto& p : parts) {
    g.nodes.insert(g.nodes.end(), p.nodes.begin(), p.nodes.end());
    g.weights.insert(g.weights.end(), p.weights.begin(), p.weights.end());
  }
  return g;
}

double sum(const Grid& g, std::span<const double> values) {
  return kernels::weighted_sum(g.weights, values);
}

double integrate_real(const RealFn& f, const Grid& g) {
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    v[i] = f(g.nodes[i]);
    check_finite(v[i]);
  }
  return sum(g, v);
}

Complex integrate_complex(const ComplexFn& f, const Grid& g) {
  std::vector<double> re(g.size());
  std::vector<double> im(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Complex v = f(g.nodes[i]);
    check_finite(v.real());
    check_finite(v.imag());
    re[i] = v.real();
    im[i] = v.imag();
  }
  return {sum(g, re), sum(g, im)};
}

namespace {

void check_pole(double pole, double a, double b) {
  if (!(pole > a && pole < b)) throw Error(ErrorCode::pole_outside, "pole must lie in (a, b)");
}

double pv_from_samples(const Grid& g, std::span<const double> v, double pole, double fp,
                       double slope) {
  const double len = g.b - g.a;
  const double delta = kPvSubtractFraction * len;
  const double s = kernels::pv_sum(g.nodes, g.weights, v, pole, fp, slope, delta);
  return s + fp * std::log((g.b - pole) / (pole - g.a));
}

}  // namespace

double pv_integral_real(const RealFn& f, double pole, const Grid& g) {
  check_pole(pole, g.a, g.b);
  const double h = kPvStepFraction * (g.b - g.a);
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    v[i] = f(g.nodes[i]);
    check_finite(v[i]);
  }
  const double fp = f(pole);
  const double slope = (f(pole + h) - f(pole - h)) / (2.0 * h);
  check_finite(fp);
  check_finite(slope);
  return pv_from_samples(g, v, pole, fp, slope);
}

double pv_integral_real(const RealFn& f, double pole, double a, double b, int n) {
  check_interval(a, b);
  check_pole(pole, a, b);
  return pv_integral_real(f, pole, gauss_grid(a, b, n));
}

Complex pv_integral_complex(const ComplexFn& f, double pole, double a, double b, int n) {
  check_interval(a, b);
  check_pole(pole, a, b);
  const Grid g = gauss_grid(a, b, n);
  const double h = kPvStepFraction * (b - a);
  std::vector<double> re(g.size());
  std::vector<double> im(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Complex v = f(g.nodes[i]);
    check_finite(v.real());
    check_finite(v.imag());
    re[i] = v.real();
    im[i] = v.imag();
  }
  const Complex fp = f(pole);
  const Complex slope = (f(pole + h) - f(pole - h)) / (2.0 * h);
  check_finite(fp.real());
  check_finite(fp.imag());
  return {pv_from_samples(g, re, pole, fp.real(), slope.real()),
          pv_from_samples(g, im, pole, fp.imag(), slope.imag())};
}

void validate(const Circle& c) {
  if (!(c.radius > 0.0) || !std::isfinite(c.radius) || c.n_points < 8 || c.n_points % 2 != 0)
    throw Error(ErrorCode::invalid_params, "circle needs radius > 0 and an even n_points >= 8");
}

std::vector<Complex> circle_points(const Circle& c) {
  validate(c);
  std::vector<Complex> z(c.n_points);
  for (int j = 0; j < c.n_points; ++j) {
    const double th = 2.0 * std::numbers::pi * j / c.n_points;
    z[j] = c.center + c.radius * Complex(std::cos(th), std::sin(th));
  }
  return z;
}

namespace {

void check_finite(const Complex& v) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw Error(ErrorCode::nonfinite_value, "contour integrand is not finite");
}

}  // namespace

CMatrix contour_integral(const std::function<CMatrix(Complex)>& F, const Circle& circle) {
  const auto z = circle_points(circle);
  std::vector<CMatrix> terms(z.size());
  parallel_for(z.size(), [&](std::size_t j) {
    CMatrix v = F(z[j]);
    if (!v.all_finite()) throw Error(ErrorCode::nonfinite_value, "contour integrand is not finite");
    terms[j] = (z[j] - circle.center) * std::move(v);
  });
  CMatrix s = pairwise_sum(terms, CMatrix());
  s *= 1.0 / circle.n_points;
  return s;
}

Complex contour_integral(const std::function<Complex(Complex)>& F, const Circle& circle) {
  const auto z = circle_points(circle);
  std::vector<Complex> terms(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) {
    const Complex v = F(z[j]);
    check_finite(v);
    terms[j] = v * (z[j] - circle.center);
  }
  return pairwise_sum(terms, Complex{}) / static_cast<double>(circle.n_points);
}

std::vector<Complex> contour_integral(const std::function<std::vector<Complex>(Complex)>& F,
                                      const Circle& circle) {
  const auto z = circle_points(circle);
  std::vector<std::vector<Complex>> samples(z.size());
  parallel_for(z.size(), [&](std::size_t j) {
    samples[j] = F(z[j]);
    for (auto& v : samples[j]) {
      check_finite(v);
      v *= (z[j] - circle.center);
    }
  });
  const std::size_t m = samples.empty() ? 0 : samples[0].size();
  std::vector<Complex> out(m);
  std::vector<Complex> column(z.size());
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t j = 0; j < z.size(); ++j) column[j] = samples[j][k];
    out[k] = pairwise_sum(column, Complex{}) / static_cast<double>(circle.n_points);
  }
  return out;
}

Complex richardson_limit(std::span<const double> u, std::span<const Complex> v) {
  if (u.empty() || u.size() != v.size())
    throw Error(ErrorCode::bad_sequence, "need matching, non-empty samples");
  const std::size_t m = std::min<std::size_t>(4, u.size());
  const std::size_t off = u.size() - m;
  double scale = 0.0;
  for (std::size_t i = 0; i < m; ++i) scale = std::max(scale, std::fabs(u[off + i]));
  if (scale == 0.0) return v.back();
  // Basis in the scaled variable s = u/scale; the u ln|u| column differs from
  // s ln|s| only by a multiple of s, which the fit absorbs.
  double A[4][4];
  Complex rhs[4];
  for (std::size_t i = 0; i < m; ++i) {
    const double s = u[off + i] / scale;
    const double basis[4] = {1.0, s, s * std::log(std::fabs(s)), s * s};
    for (std::size_t j = 0; j < m; ++j) A[i][j] = basis[j];
    rhs[i] = v[off + i];
  }
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < m; ++i)
      if (std::fabs(A[i][k]) > std::fabs(A[piv][k])) piv = i;
    if (A[piv][k] == 0.0) throw Error(ErrorCode::bad_sequence, "degenerate extrapolation nodes");
    for (std::size_t j = 0; j < m; ++j) std::swap(A[k][j], A[piv][j]);
    std::swap(rhs[k], rhs[piv]);
    for (std::size_t i = k + 1; i < m; ++i) {
      const double f = A[i][k] / A[k][k];
      for (std::size_t j = k; j < m; ++j) A[i][j] -= f * A[k][j];
      rhs[i] -= f * rhs[k];
    }
  }
  Complex coef[4];
  for (std::size_t k = m; k-- > 0;) {
    Complex s = rhs[k];
    for (std::size_t j = k + 1; j < m; ++j) s -= A[k][j] * coef[j];
    coef[k] = s / A[k][k];
  }
  return coef[0];
}

}  // namespace spectral::quad
