#include <cmath>
#include <limits>

#include "spectral/matspec.hpp"

namespace spectral::matspec {
namespace {

constexpr int kMaxSweeps = 60;  // per eigenvalue
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Householder reduction to upper Hessenberg form (similarity, eigenvalues kept).
void to_hessenberg(CMatrix& h) {
  const std::size_t n = h.dim();
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double norm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) norm2 += std::norm(h(i, k));
    const double alpha = std::sqrt(norm2);
    if (alpha == 0.0) continue;
    std::vector<Complex> v(n, Complex{});
    const Complex x0 = h(k + 1, k);
    const Complex phase = std::abs(x0) > 0 ? x0 / std::abs(x0) : Complex(1.0);
    for (std::size_t i = k + 1; i < n; ++i) v[i] = h(i, k);
    v[k + 1] += phase * alpha;
    double vnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
    if (vnorm2 == 0.0) continue;
    // h <- (I - 2 v v*/|v|^2) h (I - 2 v v*/|v|^2)
    for (std::size_t j = 0; j < n; ++j) {
      Complex s{};
      for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i]) * h(i, j);
      s *= 2.0 / vnorm2;
      for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= v[i] * s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      Complex s{};
      for (std::size_t j = k + 1; j < n; ++j) s += h(i, j) * v[j];
      s *= 2.0 / vnorm2;
      for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= s * std::conj(v[j]);
    }
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
}

// Eigenvalue of the trailing 2x2 block closest to its last diagonal entry.
Complex wilkinson_shift(const CMatrix& h, std::size_t hi) {
  const Complex a = h(hi - 1, hi - 1), b = h(hi - 1, hi), c = h(hi, hi - 1), d = h(hi, hi);
  const Complex tr = 0.5 * (a + d);
  const Complex disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
  const Complex l1 = tr + disc, l2 = tr - disc;
  return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

struct Givens {
  Complex c, s;
};

// One shifted QR step H - mu = QR, H <- RQ + mu on the block [lo, hi].
void qr_step(CMatrix& h, std::size_t lo, std::size_t hi, Complex mu) {
  for (std::size_t i = lo; i <= hi; ++i) h(i, i) -= mu;
  std::vector<Givens> rot;
  for (std::size_t k = lo; k < hi; ++k) {
    const Complex x = h(k, k), y = h(k + 1, k);
    const double r = std::hypot(std::abs(x), std::abs(y));
    Givens g = r == 0.0 ? Givens{1.0, 0.0} : Givens{x / r, y / r};
    rot.push_back(g);
    for (std::size_t j = k; j <= hi; ++j) {
      const Complex u = h(k, j), w = h(k + 1, j);
      h(k, j) = std::conj(g.c) * u + std::conj(g.s) * w;
      h(k + 1, j) = -g.s * u + g.c * w;
    }
  }
  for (std::size_t k = lo; k < hi; ++k) {
    const Givens& g = rot[k - lo];
    const std::size_t top = std::min(k + 1, hi);
    for (std::size_t i = lo; i <= top; ++i) {
      const Complex u = h(i, k), w = h(i, k + 1);
      h(i, k) = u * g.c + w * g.s;
      h(i, k + 1) = -u * std::conj(g.s) + w * std::conj(g.c);
    }
  }
  for (std::size_t i = lo; i <= hi; ++i) h(i, i) += mu;
}

}  // namespace

std::vector<Complex> eigenvalues(const CMatrix& a) {
  if (!a.all_finite()) throw Error(ErrorCode::nonfinite_value, "matrix has non-finite entries");
  const std::size_t n = a.dim();
  std::vector<Complex> out;
  if (n == 0) return out;
  CMatrix h = a;
  to_hessenberg(h);
  std::size_t hi = n - 1;
  int sweeps = 0;
  while (true) {
    if (hi == 0) {
      out.push_back(h(0, 0));
      break;
    }
    std::size_t lo = hi;
    while (lo > 0) {
      const double scale = std::abs(h(lo, lo)) + std::abs(h(lo - 1, lo - 1));
      if (std::abs(h(lo, lo - 1)) <= kEps * (scale > 0 ? scale : 1.0)) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      out.push_back(h(hi, hi));
      --hi;
      sweeps = 0;
      continue;
    }
    if (++sweeps > kMaxSweeps)
      throw Error(ErrorCode::nonfinite_value, "QR iteration did not converge");
    Complex mu = wilkinson_shift(h, hi);
    if (sweeps % 11 == 0) mu += 0.75 * std::abs(h(hi, hi - 1));  // exceptional shift
    qr_step(h, lo, hi, mu);
  }
  return out;
}

}  // namespace spectral::matspec
