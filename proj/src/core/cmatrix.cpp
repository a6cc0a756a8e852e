#include "spectral/cmatrix.hpp"

#include <algorithm>
#include <cmath>

namespace spectral {

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : n_(rows.size()), data_(rows.size() * rows.size()) {
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != n_) throw Error(ErrorCode::invalid_params, "matrix must be square");
    std::size_t j = 0;
    for (const Complex& v : row) (*this)(i, j++) = v;
    ++i;
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(const std::vector<Complex>& d) {
  CMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

CMatrix& CMatrix::operator*=(Complex s) {
  for (auto& v : data_) v *= s;
  return *this;
}

CMatrix CMatrix::adjoint() const {
  CMatrix r(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

Complex CMatrix::trace() const {
  Complex t{};
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::frobenius() const {
  double s = 0.0;
  for (const auto& v : data_) s += std::norm(v);
  return std::sqrt(s);
}

bool CMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

std::vector<Complex> CMatrix::apply(const std::vector<Complex>& v) const {
  std::vector<Complex> r(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    Complex s{};
    for (std::size_t j = 0; j < n_; ++j) s += (*this)(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(Complex s, CMatrix a) { return a *= s; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  const std::size_t n = a.dim();
  CMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

CMatrix power(const CMatrix& a, int k) {
  CMatrix r = CMatrix::identity(a.dim());
  for (int i = 0; i < k; ++i) r = r * a;
  return r;
}

CMatrix solve(const CMatrix& a, const CMatrix& b, double rel_tol) {
  const std::size_t n = a.dim();
  CMatrix lu = a;
  CMatrix x = b;
  double scale = 0.0;
  for (const auto& v : a.data()) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) scale = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(lu(i, k)) > best) {
        best = std::abs(lu(i, k));
        piv = i;
      }
    }
    if (!(best > rel_tol * scale)) throw Error(ErrorCode::singular_shift, "matrix is singular");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(lu(k, j), lu(piv, j));
        std::swap(x(k, j), x(piv, j));
      }
    }
    const Complex inv = 1.0 / lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = lu(i, k) * inv;
      if (f == Complex{}) continue;
      for (std::size_t j = k; j < n; ++j) lu(i, j) -= f * lu(k, j);
      for (std::size_t j = 0; j < n; ++j) x(i, j) -= f * x(k, j);
    }
  }
  for (std::size_t kk = n; kk-- > 0;) {
    for (std::size_t j = 0; j < n; ++j) {
      Complex s = x(kk, j);
      for (std::size_t m = kk + 1; m < n; ++m) s -= lu(kk, m) * x(m, j);
      x(kk, j) = s / lu(kk, kk);
    }
  }
  return x;
}

CMatrix inverse(const CMatrix& a, double rel_tol) {
  return solve(a, CMatrix::identity(a.dim()), rel_tol);
}

}  // namespace spectral
