#include <cmath>
#include <numbers>

#include "spectral/kernels.hpp"
#include "spectral/krein.hpp"
#include "spectral/parallel.hpp"
#include "spectral/quad.hpp"

namespace spectral::krein {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kRefPanels = 16;
constexpr int kRefOrder = 32;

TestFn1D profile_on(double a, double b, const BumpSpec& s, bool mirrored) {
  std::vector<double> p = s.p;
  if (mirrored)
    for (std::size_t k = 1; k < p.size(); k += 2) p[k] = -p[k];
  return TestFn1D::rational_bump(a, b, std::move(p), s.m, s.beta);
}

double reference_integral(double c, const BumpSpec& s, double (*weight)(double)) {
  const TestFn1D g0 = profile_on(1.0, c, s, false);
  const quad::Grid grid = quad::composite_grid(1.0, c, kRefPanels, kRefOrder);
  return quad::integrate([&](double y) { const double v = g0(y); return 2.0 * v * v * weight(y); }, grid);
}

}  // namespace

KreinModel KreinModel::build(double c, double kappa, const BumpSpec& g0, int n) {
  if (!(c > 1.0) || !std::isfinite(c)) throw Error(ErrorCode::invalid_params, "need c > 1");
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw Error(ErrorCode::invalid_params, "need kappa >= 0");
  if (n < 16) throw Error(ErrorCode::invalid_params, "need n >= 16");
  if (g0.p.empty() || g0.m < 0 || !(g0.beta > 0.0))
    throw Error(ErrorCode::invalid_params, "bad bump parameters");

  KreinModel m;
  m.c_ = c;
  m.kappa_ = kappa;
  m.spec_ = g0;
  m.n_ = n;
  m.g0_ = profile_on(1.0, c, g0, false);
  const TestFn1D g0m = profile_on(-c, -1.0, g0, true);
  m.gfn_ = kappa * (m.g0_ + g0m);
  m.hfn_ = kappa * (g0m - m.g0_);
  m.ghfn_ = (kappa * kappa) * (g0m * g0m - m.g0_ * m.g0_);

  const quad::Grid pos = quad::gauss_grid(1.0, c, n);
  const std::size_t un = static_cast<std::size_t>(n);
  m.nodes_.resize(2 * un);
  m.weights_.resize(2 * un);
  m.g_.resize(2 * un);
  m.h_.resize(2 * un);
  for (std::size_t k = 0; k < un; ++k) {
    const double gv = kappa * m.g0_(pos.nodes[k]);
    const std::size_t ip = un + k, in = un - 1 - k;
    m.nodes_[ip] = pos.nodes[k];
    m.nodes_[in] = -pos.nodes[k];
    m.weights_[ip] = m.weights_[in] = pos.weights[k];
    m.g_[ip] = m.g_[in] = gv;
    m.h_[ip] = -gv;
    m.h_[in] = gv;
  }

  const Sampled gh = sample(m, m.ghfn_);
  const Sampled dgh = sample(m, m.ghfn_.derivative(1));
  const auto t0 = hilbert(m, gh);
  const auto t1 = hilbert(m, dgh);
  const std::size_t size = m.nodes_.size();
  m.c1_.resize(size);
  m.dc1_.resize(size);
  m.c2_.resize(size);
  m.norm_.resize(size);
  m.dnorm_.resize(size);
  for (std::size_t i = 0; i < size; ++i) {
    m.c1_[i] = 1.0 - t0[i];
    m.dc1_[i] = -t1[i];
    m.c2_[i] = m.g_[i] * m.h_[i];
    const double d2 = m.c1_[i] * m.c1_[i] + kPi * kPi * m.c2_[i] * m.c2_[i];
    m.norm_[i] = 1.0 / std::sqrt(d2);
    m.dnorm_[i] = -(m.c1_[i] * m.dc1_[i] + kPi * kPi * m.c2_[i] * gh.dv[i]) * m.norm_[i] / d2;
  }
  return m;
}

Sampled sample(const KreinModel& m, const TestFn1D& f) {
  Sampled s;
  s.v.resize(m.size());
  s.dv.resize(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto t = f.taylor(m.nodes()[i], 1);
    s.v[i] = t[0];
    s.dv[i] = t[1];
  }
  return s;
}

Sampled operator*(const Sampled& a, const Sampled& b) {
  Sampled s;
  s.v.resize(a.v.size());
  s.dv.resize(a.v.size());
  for (std::size_t i = 0; i < a.v.size(); ++i) {
    s.v[i] = a.v[i] * b.v[i];
    s.dv[i] = a.dv[i] * b.v[i] + a.v[i] * b.dv[i];
  }
  return s;
}

std::vector<double> hilbert(const KreinModel& m, const Sampled& f) {
  const std::size_t n = static_cast<std::size_t>(m.n());
  const auto& x = m.nodes();
  const auto& w = m.weights();
  const std::span<const double> xs[2] = {std::span(x).first(n), std::span(x).subspan(n)};
  const std::span<const double> ws[2] = {std::span(w).first(n), std::span(w).subspan(n)};
  const std::span<const double> vs[2] = {std::span(f.v).first(n), std::span(f.v).subspan(n)};
  std::vector<double> wv(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) wv[j] = w[j] * f.v[j];
  const std::span<const double> wvs[2] = {std::span(wv).first(n), std::span(wv).subspan(n)};
  const std::vector<double> zeros(n, 0.0);
  const double ends[2][2] = {{-m.c(), -1.0}, {1.0, m.c()}};
  const double delta = 1e-13 * (m.c() - 1.0);

  std::vector<double> out(x.size());
  parallel_for(x.size(), [&](std::size_t i) {
    const int own = i < n ? 0 : 1;
    const double y = x[i];
    const double a = ends[own][0], b = ends[own][1];
    // PV integral of v/(x - y) over the own slit, by subtraction
    const double pv = kernels::pv_sum(xs[own], ws[own], vs[own], y, f.v[i], f.dv[i], delta) +
                      f.v[i] * std::log((b - y) / (y - a));
    const double other = kernels::cauchy_sum(xs[1 - own], wvs[1 - own], zeros, y).real();
    out[i] = other - pv;
  });
  return out;
}

double integral_i0(double c, const BumpSpec& g0) {
  return reference_integral(c, g0, [](double y) { return 1.0 / y; });
}

double integral_i1(double c, const BumpSpec& g0) {
  return reference_integral(c, g0, [](double y) { return y / (y * y - 1.0); });
}

double kappa_star(double c, const BumpSpec& g0) { return 1.0 / std::sqrt(integral_i0(c, g0)); }
double kappa_one(double c, const BumpSpec& g0) { return 1.0 / std::sqrt(integral_i1(c, g0)); }

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::imaginary_pair: return "imaginary_pair";
    case Regime::real_pair: return "real_pair";
    case Regime::double_zero: return "double_zero";
    case Regime::none: return "none";
  }
  return "none";
}

}  // namespace spectral::krein
