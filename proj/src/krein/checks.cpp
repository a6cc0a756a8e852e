#include <algorithm>
#include <cmath>

#include "spectral/krein.hpp"
#include "spectral/parallel.hpp"

namespace spectral::krein {
namespace {

// Dense real square matrix, row-major; only what the normality check needs.
struct Dense {
  std::size_t n;
  std::vector<double> a;
  explicit Dense(std::size_t size) : n(size), a(size * size, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

Dense multiply(const Dense& x, const Dense& y) {
  Dense out(x.n);
  parallel_for(x.n, [&](std::size_t i) {
    for (std::size_t k = 0; k < x.n; ++k) {
      const double v = x(i, k);
      if (v == 0.0) continue;
      for (std::size_t j = 0; j < x.n; ++j) out(i, j) += v * y(k, j);
    }
  });
  return out;
}

Dense transpose(const Dense& x) {
  Dense out(x.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t j = 0; j < x.n; ++j) out(j, i) = x(i, j);
  return out;
}

double frobenius_diff(const Dense& x, const Dense& y) {
  double s = 0.0;
  for (std::size_t k = 0; k < x.a.size(); ++k) s += (x.a[k] - y.a[k]) * (x.a[k] - y.a[k]);
  return std::sqrt(s);
}

double frobenius(const Dense& x) { return frobenius_diff(x, Dense(x.n)); }

// S X S with (S f)(w) = (f(w) + f(-w))/2; the grid is mirror-symmetric.
Dense sandwich(const KreinModel& m, const Dense& x) {
  Dense out(x.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t j = 0; j < x.n; ++j) {
      const std::size_t mi = m.mirror(i), mj = m.mirror(j);
      out(i, j) = 0.25 * (x(i, j) + x(mi, j) + x(i, mj) + x(mi, mj));
    }
  return out;
}

void add_outer(Dense& x, const std::vector<double>& u, const std::vector<double>& v, double s) {
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t j = 0; j < x.n; ++j) x(i, j) += s * u[i] * v[j];
}

// (z - H*)^-1 f with H* = Omega + |h><g|, by the mirrored Krein formula.
std::vector<Complex> adjoint_resolvent_apply(const KreinModel& m, Complex z, const std::vector<Complex>& f) {
  const Complex cz = char_discrete(m, z);
  std::vector<Complex> out(f.size());
  Complex s{};
  for (std::size_t j = 0; j < f.size(); ++j) {
    out[j] = f[j] / (z - m.nodes()[j]);
    s += m.weights()[j] * m.g()[j] * out[j];
  }
  s /= cz;
  for (std::size_t j = 0; j < f.size(); ++j) out[j] += m.h()[j] / (z - m.nodes()[j]) * s;
  return out;
}

double l2_diff(const KreinModel& m, const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += m.weights()[j] * std::norm(a[j] - b[j]);
  return std::sqrt(s);
}

std::vector<Complex> reflect(const KreinModel& m, const std::vector<Complex>& v) {
  std::vector<Complex> out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) out[j] = v[m.mirror(j)];
  return out;
}

std::vector<Complex> sign_flip(const KreinModel& m, std::vector<Complex> v) {
  for (std::size_t j = 0; j < v.size(); ++j)
    if (m.nodes()[j] < 0.0) v[j] = -v[j];
  return v;
}

}  // namespace

NonnormalityResult nonnormality_check(const KreinModel& m) {
  // Orthonormal coordinates sqrt(w) f, in which the adjoint is the transpose.
  const std::size_t n = m.size();
  std::vector<double> gh(n), hh(n), omh(n), om2(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double sw = std::sqrt(m.weights()[j]);
    gh[j] = sw * m.g()[j];
    hh[j] = sw * m.h()[j];
    omh[j] = m.nodes()[j] * hh[j];
    om2[j] = m.nodes()[j] * m.nodes()[j];
  }
  Dense h(n);
  for (std::size_t j = 0; j < n; ++j) h(j, j) = m.nodes()[j];
  add_outer(h, gh, hh, 1.0);
  const Dense ht = transpose(h);
  const Dense hhs = multiply(h, ht), hsh = multiply(ht, h);

  NonnormalityResult r;
  r.h_norm = frobenius(h);
  r.comm_norm = frobenius_diff(hhs, hsh);

  double h_sq = 0.0;
  for (double v : hh) h_sq += v * v;
  Dense omega2(n);
  for (std::size_t j = 0; j < n; ++j) omega2(j, j) = om2[j];
  const Dense s_om2 = sandwich(m, omega2);
  // S H H* S = S Omega^2 S + |Omega h><g| + |g><Omega h| + ||h||^2 |g><g|
  Dense rhs1 = s_om2;
  add_outer(rhs1, omh, gh, 1.0);
  add_outer(rhs1, gh, omh, 1.0);
  add_outer(rhs1, gh, gh, h_sq);
  // naive form, which fails: S H H* S = Omega^2 + |g><h|h><g| (read on the even subspace)
  Dense naive = s_om2;
  add_outer(naive, gh, gh, h_sq);
  const Dense lhs1 = sandwich(m, hhs), lhs2 = sandwich(m, hsh);
  const double scale = std::max(1.0, frobenius(hhs));
  r.s_identity_defect = std::max(frobenius_diff(lhs1, rhs1), frobenius_diff(lhs2, s_om2)) / scale;
  r.naive_identity_defect = frobenius_diff(lhs1, naive) / scale;
  return r;
}

SymmetryResult symmetry_check(const KreinModel& m, Complex z, const std::vector<std::vector<Complex>>& vs) {
  SymmetryResult r;
  for (const auto& v : vs) {
    const auto jrj = reflect(m, resolvent_apply(m, z, reflect(m, v)));
    auto minus = resolvent_apply(m, -z, v);
    for (auto& x : minus) x = -x;
    const auto adj = adjoint_resolvent_apply(m, z, v);  // R(conj z)* v
    const auto krk = sign_flip(m, resolvent_apply(m, z, sign_flip(m, v)));
    const double scale = std::max(l2_diff(m, adj, std::vector<Complex>(v.size())), 1e-300);
    r.reflection_defect = std::max(r.reflection_defect, l2_diff(m, jrj, minus) / scale);
    r.sign_defect = std::max(r.sign_defect, l2_diff(m, krk, adj) / scale);
    r.naive_defect = std::max(r.naive_defect, l2_diff(m, jrj, adj) / scale);
  }
  return r;
}

}  // namespace spectral::krein
