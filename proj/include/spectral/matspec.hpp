#pragma once

#include <functional>
#include <vector>

#include "spectral/cmatrix.hpp"
#include "spectral/testfn.hpp"

namespace spectral::matspec {

/// Local Jordan data of a finite matrix: eigenvalue clusters with their Riesz
/// projectors p_i and nilpotent parts a_i = (A - lambda_i) p_i.
struct SpectralDataMatrix {
  std::vector<Complex> eigenvalues;
  std::vector<CMatrix> projectors;
  std::vector<CMatrix> nilpotents;
  std::vector<int> orders;  // smallest n with a^n = 0
};

struct RieszData {
  CMatrix p;
  CMatrix a;
};

/// Highest nilpotency order spectral_smear accepts (derivatives of order <= 12).
inline constexpr int kOrderCap = 13;

/// (z - A)^-1. Throws singular_shift when z is numerically an eigenvalue.
CMatrix resolvent(const CMatrix& a, Complex z);

/// ||R(z1) - R(z2) - (z2 - z1) R(z1) R(z2)||_F / ||R(z1)||_F.
double resolvent_equation_residual(const CMatrix& a, Complex z1, Complex z2);

/// Laurent coefficient b_k = (1/2 pi i) contour integral of (z - lambda)^k R(z)
/// over |z - lambda| = r. b_0 = p, b_1 = a.
CMatrix laurent_coefficient(const CMatrix& a, Complex lambda, double r, int k, int n_points = 256);

/// p and a on the circle |z - lambda| = r. Throws enclosure_ambiguous when p is
/// not idempotent to 1e-6.
RieszData riesz_data(const CMatrix& a, Complex lambda, double r, int n_points = 256);

/// Eigenvalues by Hessenberg reduction and shifted QR.
std::vector<Complex> eigenvalues(const CMatrix& a);

/// max_i sum_j |a_ij|: every eigenvalue lies in the disc of this radius.
double gershgorin_radius(const CMatrix& a);

/// Clusters the eigenvalues (a defective eigenvalue of order n splits by about
/// eps^(1/n)) and extracts Riesz data for each cluster.
SpectralDataMatrix spectral_data(const CMatrix& a, int n_points = 256);

/// M(phi) = sum_i sum_{k < n_i} (1/k!) p_i a_i^k (d^k phi)(lambda_i).
CMatrix spectral_smear(const SpectralDataMatrix& sd, const TestFn2D& phi);

/// ||M(phi1) M(phi2) - M(phi1 phi2)||_F.
double multiplicativity_check(const SpectralDataMatrix& sd, const TestFn2D& phi1,
                              const TestFn2D& phi2);

/// ||(1/2 pi i) contour integral of R over |z| = r minus I||_F. Throws
/// radius_too_small unless r exceeds the Gershgorin radius.
double completeness_contour(const CMatrix& a, double r, int n_points = 256);

/// Fourier coefficient (1/2 pi) integral of exp(-i l theta) phi(theta), by the
/// trapezoid rule on n samples.
Complex fourier_coefficient(const std::function<Complex(double)>& phi, int l, int n);

/// sum_{|l| <= L} U^l phi_hat(l). Throws not_unitary when ||U*U - I|| > 1e-10.
CMatrix unitary_spectral_smear(const CMatrix& u, const std::function<Complex(double)>& phi, int L);

/// For A = 0 and R(z) = 1/z - pi C delta(z): M(phi) = phi(0) I + C (dbar phi)(0).
/// Worst defect of M(phi)M(psi) - M(phi psi) over a fixed family of test pairs,
/// relative to |dbar phi(0) dbar psi(0)|.
double nonunique_extension_defect(const CMatrix& c);
bool nonunique_extension_check(const CMatrix& c);

}  // namespace spectral::matspec
