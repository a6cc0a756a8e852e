#include <algorithm>
#include <cmath>
#include <numbers>

#include "spectral/distcore.hpp"
#include "spectral/krein.hpp"
#include "spectral/quad.hpp"

namespace spectral::krein {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kGapSamples = 257;

void check_support(const KreinModel& m, const TestFn1D& f) {
  if (f.is_zero()) return;
  const auto [a, b] = f.support();
  if (a < -m.c() || b > m.c())
    throw Error(ErrorCode::support_violation, "test function reaches outside (-c, c)");
  for (int k = 0; k < kGapSamples; ++k) {
    const double x = -1.0 + 2.0 * k / (kGapSamples - 1);
    if (f(x) != 0.0) throw Error(ErrorCode::support_violation, "test function is non-zero on [-1, 1]");
  }
}

void check_in_g(const KreinModel& m, double x) {
  const double ax = std::abs(x);
  if (!(ax > 1.0 && ax < m.c())) throw Error(ErrorCode::x_outside_g, "x is not inside G");
}

Sampled norm_sampled(const KreinModel& m) { return {m.norm(), m.dnorm()}; }

// <f|alpha_x> (partner = g, weight = h) or <alpha'_x|f> (partner = h, weight = g):
// N (C1 f + weight T[partner f]) with its x-derivative.
Sampled pair_impl(const KreinModel& m, const TestFn1D& f, const TestFn1D& partner, const TestFn1D& weight) {
  check_support(m, f);
  const TestFn1D pf = partner * f;
  const auto t = hilbert(m, sample(m, pf));
  const auto dt = hilbert(m, sample(m, pf.derivative(1)));
  const Sampled fs = sample(m, f), ws = sample(m, weight);
  Sampled out;
  out.v.resize(m.size());
  out.dv.resize(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double inner = m.c1()[i] * fs.v[i] + ws.v[i] * t[i];
    const double dinner = m.dc1()[i] * fs.v[i] + m.c1()[i] * fs.dv[i] + ws.dv[i] * t[i] + ws.v[i] * dt[i];
    out.v[i] = m.norm()[i] * inner;
    out.dv[i] = m.dnorm()[i] * inner + m.norm()[i] * dinner;
  }
  return out;
}

double l2(const KreinModel& m, const std::vector<Complex>& v) {
  double s = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) s += m.weights()[j] * std::norm(v[j]);
  return std::sqrt(s);
}

}  // namespace

double alpha_pairing(const KreinModel& m, double x, const TestFn1D& f) {
  check_in_g(m, x);
  const BoundaryValues b = char_boundary(m, x);
  const double n = 1.0 / std::hypot(b.c1, kPi * b.c2);
  return n * (b.c1 * f(x) - m.h_fn()(x) * distcore::pv_line(m.g_fn() * f, x));
}

double alpha_prime_pairing(const KreinModel& m, double x, const TestFn1D& f) {
  check_in_g(m, x);
  const BoundaryValues b = char_boundary(m, x);
  const double n = 1.0 / std::hypot(b.c1, kPi * b.c2);
  return n * (b.c1 * f(x) - m.g_fn()(x) * distcore::pv_line(m.h_fn() * f, x));
}

MuPairing mu_apply(const KreinModel& m, double x, const TestFn1D& f1, const TestFn1D& f2) {
  check_in_g(m, x);
  const BoundaryValues bv = char_boundary(m, x);
  const double c1 = bv.c1, c2 = bv.c2;
  const double gx = m.g_fn()(x), hx = m.h_fn()(x);
  const double a1 = -distcore::pv_line(f1 * m.g_fn(), x);   // <f1| P/(x - Omega) |g>
  const double a2 = -distcore::pv_line(m.h_fn() * f2, x);   // <h| P/(x - Omega) |f2>
  const double b1 = gx * f1(x), b2 = hx * f2(x);
  const double d2 = c1 * c1 + kPi * kPi * c2 * c2;
  MuPairing r;
  r.value = f1(x) * f2(x) + (a1 * c2 * a2 + a1 * c1 * b2 + b1 * c1 * a2 - kPi * kPi * b1 * c2 * b2) / d2;
  const double n = 1.0 / std::sqrt(d2);
  r.factorized = n * (c1 * f1(x) + hx * a1) * n * (c1 * f2(x) + gx * a2);
  const double scale = std::max({1.0, std::abs(r.value), std::abs(f1(x) * f2(x)), std::abs(a1 * a2)});
  r.defect = std::abs(r.value - r.factorized) / scale;
  return r;
}

Sampled pair_alpha(const KreinModel& m, const TestFn1D& f) { return pair_impl(m, f, m.g_fn(), m.h_fn()); }

Sampled pair_alpha_prime(const KreinModel& m, const TestFn1D& f) {
  return pair_impl(m, f, m.h_fn(), m.g_fn());
}

std::vector<double> smear(const KreinModel& m, const Sampled& c, Side side) {
  // right: N C1 c - g T[c N h];  left: N C1 c - h T[c N g]
  const Sampled other = side == Side::right ? sample(m, m.h_fn()) : sample(m, m.g_fn());
  const std::vector<double>& outer = side == Side::right ? m.g() : m.h();
  const auto t = hilbert(m, c * norm_sampled(m) * other);
  std::vector<double> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = m.norm()[i] * m.c1()[i] * c.v[i] - outer[i] * t[i];
  return out;
}

std::vector<double> eigenfunction_smear(const KreinModel& m, const TestFn1D& phi, Side side) {
  check_support(m, phi);
  return smear(m, sample(m, phi), side);
}

GramResult orthogonality_gram(const KreinModel& m, const TestFn1D& phi1, const TestFn1D& phi2) {
  const auto left = eigenfunction_smear(m, phi1, Side::left);
  const auto right = eigenfunction_smear(m, phi2, Side::right);
  GramResult r;
  for (std::size_t j = 0; j < m.size(); ++j) r.lhs += m.weights()[j] * left[j] * right[j];
  r.rhs = integrate_line(phi1 * phi2);
  const double scale = std::sqrt(integrate_line(phi1 * phi1) * integrate_line(phi2 * phi2));
  r.defect = std::abs(r.lhs - r.rhs) / std::max(std::abs(r.rhs), scale);
  return r;
}

CompletenessResult completeness_apply(const KreinModel& m, const CharFunction& cf, const TestFn1D& f,
                                      double r_big, int n_points) {
  check_support(m, f);
  double reach = m.c();
  for (const Zero& z : cf.zeros) reach = std::max(reach, std::abs(z.location));
  if (!(r_big > reach)) throw Error(ErrorCode::contour_hits_spectrum, "contour radius must exceed the spectrum");

  std::vector<Complex> fv(m.size());
  for (std::size_t j = 0; j < m.size(); ++j) fv[j] = f(m.nodes()[j]);
  const double fnorm = l2(m, fv);
  if (fnorm == 0.0) throw Error(ErrorCode::invalid_params, "f vanishes on the grid");

  CompletenessResult r;
  const quad::Circle circle{0.0, r_big, n_points};
  quad::validate(circle);
  r.contour = quad::contour_integral([&](Complex z) { return resolvent_apply(m, z, fv); }, circle);

  const DiscreteSpectrum ds = discrete_spectrum(m, cf);
  r.spectral = discrete_apply(m, ds, fv);
  const auto cont = smear(m, pair_alpha_prime(m, f), Side::right);
  for (std::size_t j = 0; j < m.size(); ++j) r.spectral[j] += cont[j];

  const auto rel = [&](const std::vector<Complex>& v) {
    std::vector<Complex> d(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) d[j] = v[j] - fv[j];
    return l2(m, d) / fnorm;
  };
  r.contour_defect = rel(r.contour);
  r.spectral_defect = rel(r.spectral);
  r.defect = std::max(r.contour_defect, r.spectral_defect);
  return r;
}

}  // namespace spectral::krein
