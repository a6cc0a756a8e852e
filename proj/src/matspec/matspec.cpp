#include <algorithm>
#include <cmath>
#include <numeric>

#include "spectral/matspec.hpp"
#include "spectral/quad.hpp"

namespace spectral::matspec {
namespace {

constexpr double kIdempotentTol = 1e-6;
constexpr double kNilpotentTol = 1e-9;
constexpr double kClusterRel = 1e-4;

CMatrix shifted(const CMatrix& a, Complex z) {
  CMatrix m = -1.0 * a;
  for (std::size_t i = 0; i < m.dim(); ++i) m(i, i) += z;
  return m;
}

}  // namespace

CMatrix resolvent(const CMatrix& a, Complex z) {
  return solve(shifted(a, z), CMatrix::identity(a.dim()));
}

double resolvent_equation_residual(const CMatrix& a, Complex z1, Complex z2) {
  const CMatrix r1 = resolvent(a, z1);
  if (z1 == z2) return 0.0;
  const CMatrix r2 = resolvent(a, z2);
  const CMatrix defect = r1 - r2 - (z2 - z1) * (r1 * r2);
  return defect.frobenius() / r1.frobenius();
}

CMatrix laurent_coefficient(const CMatrix& a, Complex lambda, double r, int k, int n_points) {
  if (k < 0) throw Error(ErrorCode::invalid_order, "Laurent index must be >= 0");
  const quad::Circle circle{lambda, r, n_points};
  quad::validate(circle);
  return quad::contour_integral(
      [&](Complex z) {
        CMatrix m = resolvent(a, z);
        m *= std::pow(z - lambda, k);
        return m;
      },
      circle);
}

RieszData riesz_data(const CMatrix& a, Complex lambda, double r, int n_points) {
  CMatrix p = laurent_coefficient(a, lambda, r, 0, n_points);
  CMatrix nil = laurent_coefficient(a, lambda, r, 1, n_points);
  const double scale = std::max(1.0, p.frobenius());
  if ((p * p - p).frobenius() > kIdempotentTol * scale)
    throw Error(ErrorCode::enclosure_ambiguous, "contour straddles an eigenvalue cluster");
  return {std::move(p), std::move(nil)};
}

double gershgorin_radius(const CMatrix& a) {
  double r = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < a.dim(); ++j) row += std::abs(a(i, j));
    r = std::max(r, row);
  }
  return r;
}

SpectralDataMatrix spectral_data(const CMatrix& a, int n_points) {
  const auto ev = eigenvalues(a);
  const double scale = std::max(1.0, gershgorin_radius(a));
  const double tol = kClusterRel * scale;

  // single-link clustering
  const std::size_t m = ev.size();
  std::vector<std::size_t> label(m);
  std::iota(label.begin(), label.end(), 0);
  const auto find = [&](std::size_t i) {
    while (label[i] != i) i = label[i] = label[label[i]];
    return i;
  };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (std::abs(ev[i] - ev[j]) <= tol) label[find(i)] = find(j);
  std::vector<std::vector<Complex>> clusters;
  std::vector<std::size_t> root_index(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t root = find(i);
    if (root_index[root] == m) {
      root_index[root] = clusters.size();
      clusters.emplace_back();
    }
    clusters[root_index[root]].push_back(ev[i]);
  }

  std::vector<Complex> centers;
  double spread = 0.0;
  for (const auto& c : clusters) {
    const Complex mean = std::accumulate(c.begin(), c.end(), Complex{}) / static_cast<double>(c.size());
    centers.push_back(mean);
    for (const Complex& v : c) spread = std::max(spread, std::abs(v - mean));
  }
  double sep = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < centers.size(); ++i)
    for (std::size_t j = i + 1; j < centers.size(); ++j) sep = std::min(sep, std::abs(centers[i] - centers[j]));
  const double r = std::isfinite(sep) ? 0.5 * sep : scale;
  if (r <= 2.0 * spread)
    throw Error(ErrorCode::enclosure_ambiguous, "eigenvalue clusters are not separated");

  SpectralDataMatrix sd;
  for (const Complex& c : centers) {
    RieszData rd = riesz_data(a, c, r, n_points);
    // The cluster's eigenvalue is tr(A p)/tr(p); recentring a there makes it traceless.
    const Complex lambda = c + rd.a.trace() / rd.p.trace();
    CMatrix nil = rd.a - (lambda - c) * rd.p;
    int order = 1;
    const double pscale = std::max(1.0, rd.p.frobenius());
    for (CMatrix pw = nil; pw.frobenius() > kNilpotentTol * pscale && order <= static_cast<int>(a.dim());
         pw = pw * nil)
      ++order;
    sd.eigenvalues.push_back(lambda);
    sd.projectors.push_back(std::move(rd.p));
    sd.nilpotents.push_back(std::move(nil));
    sd.orders.push_back(order);
  }
  return sd;
}

CMatrix spectral_smear(const SpectralDataMatrix& sd, const TestFn2D& phi) {
  if (sd.projectors.empty()) throw Error(ErrorCode::missing_data, "empty spectral data");
  for (int n : sd.orders)
    if (n > kOrderCap) throw Error(ErrorCode::order_cap, "nilpotent order above 13");
  CMatrix m(sd.projectors[0].dim());
  for (std::size_t i = 0; i < sd.projectors.size(); ++i) {
    CMatrix term = sd.projectors[i];
    double factorial = 1.0;
    for (int k = 0; k < sd.orders[i]; ++k) {
      if (k > 0) {
        term = term * sd.nilpotents[i];
        factorial *= k;
      }
      m += (phi.d_power(k, sd.eigenvalues[i]) / factorial) * term;
    }
  }
  return m;
}

double multiplicativity_check(const SpectralDataMatrix& sd, const TestFn2D& phi1,
                              const TestFn2D& phi2) {
  return (spectral_smear(sd, phi1) * spectral_smear(sd, phi2) - spectral_smear(sd, phi1 * phi2))
      .frobenius();
}

double completeness_contour(const CMatrix& a, double r, int n_points) {
  if (!(gershgorin_radius(a) < r))
    throw Error(ErrorCode::radius_too_small, "contour radius must exceed the Gershgorin radius");
  const quad::Circle circle{0.0, r, n_points};
  quad::validate(circle);
  const CMatrix total = quad::contour_integral([&](Complex z) { return resolvent(a, z); }, circle);
  return (total - CMatrix::identity(a.dim())).frobenius();
}

double nonunique_extension_defect(const CMatrix& c) {
  // Test pairs with dbar phi(0) != 0; M(phi) is expanded in the basis {I, C, C^2}.
  const TestFn1D unit = TestFn1D::bump(-1.0, 1.0);
  const TestFn1D skew = TestFn1D::bump(-1.0, 2.0);
  const TestFn1D wide = TestFn1D::bump(-2.0, 1.5);
  const std::vector<TestFn2D> family = {
      TestFn2D(skew, unit), TestFn2D(unit, skew, Complex(0.5, 1.0)),
      TestFn2D(wide, skew) + TestFn2D(skew, wide, Complex(0.0, 2.0))};
  const std::size_t n = c.dim();
  const CMatrix id = CMatrix::identity(n);
  const CMatrix c2 = c * c;
  double worst = 0.0;
  for (const auto& phi : family) {
    for (const auto& psi : family) {
      const Complex a0 = phi(0.0, 0.0), a1 = phi.dbar_power(1, 0.0);
      const Complex b0 = psi(0.0, 0.0), b1 = psi.dbar_power(1, 0.0);
      const TestFn2D prod = phi * psi;
      const Complex p0 = prod(0.0, 0.0), p1 = prod.dbar_power(1, 0.0);
      const CMatrix defect = (a0 * b0 - p0) * id + (a0 * b1 + a1 * b0 - p1) * c + (a1 * b1) * c2;
      worst = std::max(worst, defect.frobenius() / std::abs(a1 * b1));
    }
  }
  return worst;
}

bool nonunique_extension_check(const CMatrix& c) { return nonunique_extension_defect(c) <= 1e-12; }

}  // namespace spectral::matspec
