#pragma once

#include <functional>
#include <span>
#include <type_traits>
#include <vector>

#include "spectral/cmatrix.hpp"
#include "spectral/error.hpp"

namespace spectral::quad {

enum class Rule { gauss_legendre, composite };

struct Grid {
  std::vector<double> nodes;  // ascending, strictly inside (a, b)
  std::vector<double> weights;
  double a = 0.0;
  double b = 0.0;
  Rule rule = Rule::gauss_legendre;

  std::size_t size() const { return nodes.size(); }
};

/// n-point Gauss-Legendre rule mapped to (a, b).
Grid gauss_grid(double a, double b, int n);

/// `panels` equal panels, each carrying an n-point Gauss rule.
Grid composite_grid(double a, double b, int panels, int n);

/// Composite Gauss rule whose panels shrink geometrically (ratio 1/2) towards
/// each focus point until they reach `min_width`, on top of `base_panels`
/// equal panels. Used for integrands with a near-singularity of width
/// ~min_width at a focus.
Grid graded_grid(double a, double b, std::span<const double> foci, double min_width, int n,
                 int base_panels = 1);

/// Concatenation of grids on adjacent intervals.
Grid join(const std::vector<Grid>& parts);

using RealFn = std::function<double(double)>;
using ComplexFn = std::function<Complex(double)>;

double integrate_real(const RealFn& f, const Grid& g);
Complex integrate_complex(const ComplexFn& f, const Grid& g);

/// Sum of w_i f(x_i) in ascending node order; dispatches on f's return type.
template <class F>
auto integrate(F&& f, const Grid& g) {
  if constexpr (std::is_convertible_v<std::invoke_result_t<F&, double>, double>) {
    return integrate_real(RealFn(std::forward<F>(f)), g);
  } else {
    return integrate_complex(ComplexFn(std::forward<F>(f)), g);
  }
}

/// Weighted sum of pre-sampled values.
double sum(const Grid& g, std::span<const double> values);

inline constexpr double kPvSubtractFraction = 1e-6;
inline constexpr double kPvStepFraction = 1e-5;

/// Principal value of the integral of f(x)/(x - pole) over (a, b) by
/// singularity subtraction plus the exact log term.
Complex pv_integral_complex(const ComplexFn& f, double pole, double a, double b, int n);
double pv_integral_real(const RealFn& f, double pole, double a, double b, int n);

/// Same as pv_integral on an existing grid (pole must lie in (g.a, g.b)).
double pv_integral_real(const RealFn& f, double pole, const Grid& g);

template <class F>
auto pv_integral(F&& f, double pole, double a, double b, int n) {
  if constexpr (std::is_convertible_v<std::invoke_result_t<F&, double>, double>) {
    return pv_integral_real(RealFn(std::forward<F>(f)), pole, a, b, n);
  } else {
    return pv_integral_complex(ComplexFn(std::forward<F>(f)), pole, a, b, n);
  }
}

struct Circle {
  Complex center{};
  double radius = 1.0;
  int n_points = 256;
};

void validate(const Circle& c);
std::vector<Complex> circle_points(const Circle& c);

/// (1/2 pi i) * contour integral over the counter-clockwise circle, trapezoid rule.
CMatrix contour_integral(const std::function<CMatrix(Complex)>& F, const Circle& circle);
Complex contour_integral(const std::function<Complex(Complex)>& F, const Circle& circle);
std::vector<Complex> contour_integral(const std::function<std::vector<Complex>(Complex)>& F,
                                      const Circle& circle);

/// Extrapolates samples v(u_j) to u = 0 by fitting {1, u, u ln|u|, u^2} to the
/// last (up to) four samples.
Complex richardson_limit(std::span<const double> u, std::span<const Complex> v);

}  // namespace spectral::quad
