#include <algorithm>
#include <cmath>
#include <numbers>

#include "spectral/matspec.hpp"
#include "spectral/summation.hpp"

namespace spectral::matspec {
namespace {

constexpr double kUnitaryTol = 1e-10;
constexpr int kMinSamples = 256;

}  // namespace

Complex fourier_coefficient(const std::function<Complex(double)>& phi, int l, int n) {
  if (n < 1) throw Error(ErrorCode::invalid_order, "need at least one sample");
  std::vector<Complex> terms(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / n;
    // reduce l * j mod n so the phase stays exact for large l
    const long long lj = (static_cast<long long>(l) * j) % n;
    const double arg = -2.0 * std::numbers::pi * static_cast<double>(lj) / n;
    terms[static_cast<std::size_t>(j)] = phi(theta) * Complex(std::cos(arg), std::sin(arg));
  }
  return pairwise_sum(terms, Complex{}) / static_cast<double>(n);
}

CMatrix unitary_spectral_smear(const CMatrix& u, const std::function<Complex(double)>& phi, int L) {
  if (L < 0) throw Error(ErrorCode::invalid_order, "truncation order must be >= 0");
  const std::size_t n = u.dim();
  const CMatrix uh = u.adjoint();
  if ((uh * u - CMatrix::identity(n)).frobenius() > kUnitaryTol)
    throw Error(ErrorCode::not_unitary, "U*U differs from I");
  const int samples = std::max(kMinSamples, 4 * (L + 1));
  CMatrix m = fourier_coefficient(phi, 0, samples) * CMatrix::identity(n);
  CMatrix up = CMatrix::identity(n), down = CMatrix::identity(n);
  for (int l = 1; l <= L; ++l) {
    up = up * u;
    down = down * uh;
    m += fourier_coefficient(phi, l, samples) * up;
    m += fourier_coefficient(phi, -l, samples) * down;
  }
  return m;
}

}  // namespace spectral::matspec
