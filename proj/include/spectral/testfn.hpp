#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "spectral/error.hpp"

namespace spectral {

namespace testfn_detail {
struct Node;
}

/// Highest derivative order the library evaluates exactly.
inline constexpr int kMaxDerivativeOrder = 24;

/// Smooth real function on the line, usually of compact support. Built from
/// bumps P(t) s^-m exp(-beta/s) (t the affine coordinate of the support,
/// s = 1 - t^2), flat-top plateaus and polynomial factors, combined by sums
/// and products. Derivatives carry no discretisation error: they are evaluated
/// with truncated Taylor arithmetic through the expression tree.
class TestFn1D {
 public:
  TestFn1D();  // the zero function

  static TestFn1D bump(double a, double b);
  /// P(t) s^-m exp(-beta/s) on (a, b); p holds the coefficients of P in t.
  static TestFn1D rational_bump(double a, double b, std::vector<double> p, int m,
                                double beta = 1.0);
  /// 1 on [c, d], 0 outside (a, b), smooth monotone transitions in between.
  static TestFn1D plateau(double a, double c, double d, double b);
  /// Polynomial in x (coefficients ascending). Only useful as a factor.
  static TestFn1D polynomial(std::vector<double> coeffs);

  double operator()(double x) const;
  double derivative_at(double x, int k) const;
  /// f^(j)(x)/j! for j = 0..order.
  std::vector<double> taylor(double x, int order) const;

  /// Closed hull of the support; infinite for bare polynomials.
  std::pair<double, double> support() const;
  bool is_zero() const;
  /// Sorted support ends and plateau corners inside the support hull; the
  /// function is analytic between consecutive entries.
  std::vector<double> breakpoints() const;

  TestFn1D derivative(int k) const;
  /// k-th derivative of a single rational bump as another rational bump
  /// (P~ = alpha (P' s^2 + 2 m t P s - 2 beta t P), m~ = m + 2). The expanded
  /// polynomial loses relative accuracy near the support ends as k grows, so
  /// derivative() evaluates through Taylor arithmetic instead.
  TestFn1D closed_form_derivative(int k) const;
  TestFn1D times_x() const;

  TestFn1D operator+(const TestFn1D& o) const;
  TestFn1D operator-(const TestFn1D& o) const;
  TestFn1D operator*(const TestFn1D& o) const;
  friend TestFn1D operator*(double s, const TestFn1D& f);

 private:
  explicit TestFn1D(std::shared_ptr<const testfn_detail::Node> node);
  std::shared_ptr<const testfn_detail::Node> node_;
};

TestFn1D bump(double a, double b);
TestFn1D derivative(const TestFn1D& f, int k);

/// Integral over the line, n-point Gauss on each analytic piece.
double integrate_line(const TestFn1D& f, int n = 64);

/// max_{k<=m} max_x |f^(k)(x)| sampled on 4096 points of the support. This is
/// a lower bound of the true seminorm.
double norm_m(const TestFn1D& f, int m);

struct Rect {
  double x0, x1, y0, y1;
};

/// Finite sum of separable terms coef * fx(x) * fy(y) on the plane z = x + iy.
class TestFn2D {
 public:
  struct Term {
    Complex coef;
    TestFn1D fx;
    TestFn1D fy;
  };

  TestFn2D() = default;
  TestFn2D(TestFn1D fx, TestFn1D fy, Complex coef = 1.0);

  const std::vector<Term>& terms() const { return terms_; }
  Rect support() const;

  Complex operator()(double x, double y) const;
  Complex operator()(Complex z) const { return (*this)(z.real(), z.imag()); }
  /// d^jx/dx^jx d^jy/dy^jy at (x, y).
  Complex partial(int jx, int jy, double x, double y) const;
  /// (d^k phi)(z) with d = (d_x - i d_y)/2.
  Complex d_power(int k, Complex z) const;
  /// (dbar^k phi)(z) with dbar = (d_x + i d_y)/2.
  Complex dbar_power(int k, Complex z) const;

  TestFn2D d() const;
  TestFn2D dbar() const;
  TestFn2D times_z() const;

  TestFn2D operator+(const TestFn2D& o) const;
  TestFn2D operator*(const TestFn2D& o) const;
  friend TestFn2D operator*(Complex s, const TestFn2D& f);

 private:
  std::vector<Term> terms_;
};

/// Integral of phi over the plane (tensor Gauss on the support).
Complex integrate_plane(const TestFn2D& f, int n = 96);

/// (r * phi)(z) = integral of phi(zeta)/(z - zeta) over the plane, by polar
/// coordinates centred at z (the Jacobian cancels the singularity).
Complex cauchy_transform(const TestFn2D& f, Complex z, int n_theta = 96, int n_rho = 96);

}  // namespace spectral
