#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "spectral/error.hpp"

namespace spectral {

/// Dense square complex matrix, row-major.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(std::size_t n) : n_(n), data_(n * n, Complex{}) {}
  CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(const std::vector<Complex>& d);

  std::size_t dim() const { return n_; }
  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  const std::vector<Complex>& data() const { return data_; }

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(Complex s);

  CMatrix adjoint() const;
  Complex trace() const;
  double frobenius() const;
  bool all_finite() const;
  std::vector<Complex> apply(const std::vector<Complex>& v) const;

 private:
  std::size_t n_ = 0;
  std::vector<Complex> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(Complex s, CMatrix a);
CMatrix power(const CMatrix& a, int k);

/// Solves a X = b by partially pivoted elimination. Throws singular_shift when
/// a pivot falls below `rel_tol` times the largest entry of a.
CMatrix solve(const CMatrix& a, const CMatrix& b, double rel_tol = 1e-14);
CMatrix inverse(const CMatrix& a, double rel_tol = 1e-14);

}  // namespace spectral
