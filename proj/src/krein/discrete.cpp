#include <algorithm>
#include <cmath>
#include <functional>

#include "spectral/krein.hpp"

namespace spectral::krein {
namespace {

constexpr double kSingularC = 1e-13;
constexpr int kNewtonMax = 60;

bool on_slit(const KreinModel& m, Complex z) {
  const double x = std::abs(z.real());
  const double p = std::clamp(x, 1.0, m.c());
  return std::abs(Complex(x, z.imag()) - p) < kSlitTol * m.c();
}

// Zero of C_N near z by Newton's method.
Complex grid_zero(const KreinModel& m, Complex z) {
  for (int k = 0; k < kNewtonMax; ++k) {
    const Complex d = char_discrete_derivative(m, z);
    if (d == Complex{}) break;
    const Complex step = char_discrete(m, z) / d;
    z -= step;
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) break;
  }
  return z;
}

// C_N is even, so near a double zero at 0 it is a function of w = z^2 whose
// real zero w* gives the split pair +-sqrt(w*). Secant iteration in w.
Complex grid_double_zero(const KreinModel& m) {
  const auto f = [&m](double w) {
    return char_discrete(m, w >= 0.0 ? Complex(std::sqrt(w), 0.0) : Complex(0.0, std::sqrt(-w))).real();
  };
  double w0 = -1e-4, w1 = 1e-4, f0 = f(w0), f1 = f(w1);
  for (int k = 0; k < kNewtonMax && f1 != f0; ++k) {
    const double w2 = w1 - f1 * (w1 - w0) / (f1 - f0);
    w0 = w1, f0 = f1;
    w1 = w2, f1 = f(w1);
    if (std::abs(w1 - w0) <= 1e-17 || f1 == 0.0) break;
  }
  return w1 >= 0.0 ? Complex(std::sqrt(w1), 0.0) : Complex(0.0, std::sqrt(-w1));
}

std::vector<Complex> scaled(const std::vector<double>& a, const std::function<Complex(double)>& k,
                            const std::vector<double>& x) {
  std::vector<Complex> out(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] * k(x[j]);
  return out;
}

}  // namespace

Complex pairing(const KreinModel& m, const std::vector<Complex>& a, const std::vector<Complex>& b) {
  Complex s{};
  for (std::size_t j = 0; j < a.size(); ++j) s += m.weights()[j] * a[j] * b[j];
  return s;
}

std::vector<Complex> apply_h(const KreinModel& m, const std::vector<Complex>& f) {
  Complex s{};
  for (std::size_t j = 0; j < f.size(); ++j) s += m.weights()[j] * m.h()[j] * f[j];
  std::vector<Complex> out(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) out[j] = m.nodes()[j] * f[j] + m.g()[j] * s;
  return out;
}

std::vector<Complex> resolvent_apply(const KreinModel& m, Complex z, const std::vector<Complex>& f) {
  if (f.size() != m.size()) throw Error(ErrorCode::invalid_params, "vector does not match the grid");
  if (on_slit(m, z)) throw Error(ErrorCode::spectral_point, "z lies on a slit");
  const Complex cz = char_discrete(m, z);
  if (std::abs(cz) < kSingularC) throw Error(ErrorCode::spectral_point, "z is a zero of C");
  std::vector<Complex> out(f.size());
  Complex s{};
  for (std::size_t j = 0; j < f.size(); ++j) {
    out[j] = f[j] / (z - m.nodes()[j]);
    s += m.weights()[j] * m.h()[j] * out[j];
  }
  s /= cz;
  for (std::size_t j = 0; j < f.size(); ++j) out[j] += m.g()[j] / (z - m.nodes()[j]) * s;
  return out;
}

std::vector<Complex> apply(const KreinModel& m, const LowRank& op, const std::vector<Complex>& f) {
  std::vector<Complex> out(f.size());
  for (const auto& t : op) {
    const Complex s = t.scale * pairing(m, t.v, f);
    for (std::size_t j = 0; j < f.size(); ++j) out[j] += s * t.u[j];
  }
  return out;
}

std::vector<Complex> apply_left(const KreinModel& m, const LowRank& op, const std::vector<Complex>& f) {
  std::vector<Complex> out(f.size());
  for (const auto& t : op) {
    const Complex s = t.scale * pairing(m, f, t.u);
    for (std::size_t j = 0; j < f.size(); ++j) out[j] += s * t.v[j];
  }
  return out;
}

Complex trace(const KreinModel& m, const LowRank& op) {
  Complex s{};
  for (const auto& t : op) s += t.scale * pairing(m, t.v, t.u);
  return s;
}

LowRank compose(const KreinModel& m, const LowRank& a, const LowRank& b) {
  LowRank out;
  for (const auto& ta : a)
    for (const auto& tb : b) out.push_back({ta.u, tb.v, ta.scale * tb.scale * pairing(m, ta.v, tb.u)});
  return out;
}

double op_norm(const KreinModel& m, const LowRank& op) {
  const auto sesq = [&](const std::vector<Complex>& a, const std::vector<Complex>& b) {
    Complex s{};
    for (std::size_t j = 0; j < a.size(); ++j) s += m.weights()[j] * a[j] * std::conj(b[j]);
    return s;
  };
  Complex total{};
  for (const auto& k : op)
    for (const auto& l : op) total += k.scale * std::conj(l.scale) * sesq(k.u, l.u) * sesq(k.v, l.v);
  return std::sqrt(std::max(0.0, total.real()));
}

DiscreteSpectrum residues(const KreinModel& m, const CharFunction& cf) {
  if (cf.regime != Regime::imaginary_pair && cf.regime != Regime::real_pair)
    throw Error(ErrorCode::no_discrete_spectrum, "no simple zeros in this regime");
  DiscreteSpectrum ds;
  ds.regime = cf.regime;
  const Complex zn = grid_zero(m, cf.zeros.at(0).location);
  for (int sign : {1, -1}) {
    const Complex z = static_cast<double>(sign) * zn;
    const auto inv = [z](double w) { return 1.0 / (z - w); };
    RankOne r{scaled(m.g(), inv, m.nodes()), scaled(m.h(), inv, m.nodes()), 1.0};
    r.scale = 1.0 / char_discrete_derivative(m, z);
    ds.points.push_back(static_cast<double>(sign) * cf.zeros.at(0).location);
    ds.grid_points.push_back(z);
    ds.residues.push_back({std::move(r)});
  }
  return ds;
}

DiscreteSpectrum double_zero_data(const KreinModel& m, const CharFunction& cf) {
  if (cf.regime != Regime::double_zero) throw Error(ErrorCode::not_double_zero, "C(0) is not zero");
  const auto inv1 = [](double w) { return 1.0 / w; };
  const auto inv2 = [](double w) { return 1.0 / (w * w); };
  const auto g1 = scaled(m.g(), inv1, m.nodes()), g2 = scaled(m.g(), inv2, m.nodes());
  const auto h1 = scaled(m.h(), inv1, m.nodes()), h2 = scaled(m.h(), inv2, m.nodes());
  Complex c3{};
  for (std::size_t j = 0; j < m.size(); ++j) {
    const double w = m.nodes()[j];
    c3 += m.weights()[j] * m.h()[j] * m.g()[j] / (w * w * w);
  }
  DiscreteSpectrum ds;
  ds.regime = Regime::double_zero;
  ds.points = {0.0};
  ds.grid_points = {0.0};
  ds.jordan = JordanData{{{g1, h1, 1.0 / c3}}, {{g2, h1, 1.0 / c3}, {g1, h2, 1.0 / c3}}};
  return ds;
}

DiscreteSpectrum discrete_spectrum(const KreinModel& m, const CharFunction& cf) {
  switch (cf.regime) {
    case Regime::imaginary_pair:
    case Regime::real_pair: return residues(m, cf);
    case Regime::double_zero: return double_zero_data(m, cf);
    case Regime::none: break;
  }
  return {};
}

std::vector<Complex> discrete_apply(const KreinModel& m, const DiscreteSpectrum& ds,
                                    const std::vector<Complex>& f) {
  std::vector<Complex> out(f.size());
  const auto add = [&](const LowRank& op) {
    const auto v = apply(m, op, f);
    for (std::size_t j = 0; j < f.size(); ++j) out[j] += v[j];
  };
  for (const auto& r : ds.residues) add(r);
  if (ds.jordan) add(ds.jordan->p);
  return out;
}

std::vector<CrosscheckRow> discrete_crosscheck(const KreinModel& m, const CharFunction& cf,
                                               const std::vector<int>& n_sequence) {
  std::vector<CrosscheckRow> rows;
  for (int n : n_sequence) {
    const KreinModel mn = KreinModel::build(m.c(), m.kappa(), m.profile(), n);
    CrosscheckRow row{n, {}, 0.0};
    for (const Zero& z : cf.zeros) {
      const Complex zn = z.multiplicity == 2 ? grid_double_zero(mn) : grid_zero(mn, z.location);
      row.zeros.push_back(zn);
      row.gap = std::max(row.gap, std::abs(zn - z.location));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace spectral::krein
