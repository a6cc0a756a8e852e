#pragma once

#include <functional>
#include <span>
#include <vector>

#include "spectral/error.hpp"
#include "spectral/testfn.hpp"

namespace spectral::distcore {

inline constexpr int kMaxDeltaOrder = 12;

/// A distribution on the real line that can be smeared against a TestFn1D.
struct Dist1D {
  enum class Kind { delta, pv_power, boundary, smooth };

  Kind kind = Kind::delta;
  double x0 = 0.0;
  int order = 0;  // delta: derivative order k; pv_power: power k+1 (1 or 2)
  int sign = 1;   // boundary: +1 for 1/(x - x0 + i0), -1 for 1/(x - x0 - i0)
  std::function<double(double)> density;  // smooth

  static Dist1D delta(double x0, int k = 0);
  static Dist1D pv_power(double x0, int power = 1);
  static Dist1D boundary(double x0, int sign);
  static Dist1D smooth(std::function<double(double)> f);
};

Complex apply(const Dist1D& d, const TestFn1D& phi, int n = 128);

/// Integral of phi(x)/(x - x0 + i u) by Gauss panels graded towards x0.
Complex regularized_cauchy(const TestFn1D& phi, double x0, double u, int n = 20);

/// PV integral of phi(x)/(x - x0); an ordinary integral when x0 is outside
/// the open support.
double pv_line(const TestFn1D& phi, double x0, int n = 128);

struct PlemeljResult {
  std::vector<Complex> values;
  Complex extrapolated;
  double order = 0.0;  // least-squares slope of log|values - limit| vs log|u| (last four)
};

PlemeljResult plemelj_limit(const TestFn1D& phi, std::span<const double> u_sequence, double x0 = 0.0);

struct IdentityCheck {
  Complex lhs;
  Complex rhs;
  double defect = 0.0;
};

/// -integral of (1/z) dbar(phi) d^2z against pi phi(0).
IdentityCheck dbar_identity_check(const TestFn2D& phi);

/// Functional psi -> integral of (F(x+i0) - F(x-i0)) psi(x) dx. Point-mass
/// jumps (Cauchy kernels) are expressible, continuous ones via continuous_jump.
using JumpFunctional = std::function<Complex(const std::function<Complex(double)>&)>;

JumpFunctional continuous_jump(std::function<Complex(double)> f_plus,
                               std::function<Complex(double)> f_minus, double a, double b,
                               int n = 128);
JumpFunctional point_jump(double x0, Complex weight);
JumpFunctional no_jump();

struct JumpCheck {
  Complex lhs;
  Complex rhs;
  double defect = 0.0;
  std::vector<double> eps;
  std::vector<Complex> lhs_eps;
};

inline constexpr double kJumpStrip = 1e-3;
inline constexpr int kJumpRefinements = 4;

/// Smeared dbar F against (i/2) times the jump of F across the real axis.
/// `x_hints` are abscissae where F is singular on the axis; the quadrature
/// grades towards them.
JumpCheck jump_formula_check(const std::function<Complex(Complex)>& F, const JumpFunctional& jump,
                             const TestFn2D& phi, std::span<const double> x_hints = {});

struct PvProductCheck {
  Complex lhs;           // PV1 * PV2
  Complex rhs;           // D0 + i s pi (phi1 PV2 + phi2 PV1) + pi^2 phi1 phi2
  Complex extrapolated;  // D0 = lim T_u(phi1) T_u(phi2)
  double defect = 0.0;
};

PvProductCheck pv_product_check(const TestFn1D& phi1, const TestFn1D& phi2, double omega,
                                std::span<const double> u_sequence);

}  // namespace spectral::distcore
