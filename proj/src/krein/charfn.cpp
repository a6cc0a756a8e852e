#include <algorithm>
#include <cmath>

#include "spectral/distcore.hpp"
#include "spectral/kernels.hpp"
#include "spectral/krein.hpp"
#include "spectral/quad.hpp"

namespace spectral::krein {
namespace {

constexpr int kPanelOrder = 32;
constexpr int kBasePanels = 16;
constexpr double kDoubleZeroTol = 1e-10;
constexpr double kBisectTol = 1e-13;
constexpr int kNewtonSteps = 3;

struct CharValue {
  Complex value;
  Complex derivative;
};

// C and C' by quadrature of 2 y g^2/(z^2 - y^2) over (1,c), graded towards
// the slit point nearest to z.
CharValue char_with_derivative(const KreinModel& m, Complex z) {
  if (m.kappa() == 0.0) return {1.0, 0.0};
  const Complex zr = z.real() < 0.0 ? -z : z;  // C is even
  const double c = m.c();
  const double p = std::clamp(zr.real(), 1.0, c);
  const double d = std::abs(zr - p);
  if (d < kSlitTol * c) throw Error(ErrorCode::on_slit, "z lies on a slit");
  const double foci[] = {p};
  const quad::Grid grid = quad::graded_grid(1.0, c, foci, 0.25 * d, kPanelOrder, kBasePanels);
  const double k2 = m.kappa() * m.kappa();
  std::vector<Complex> v(grid.size()), dv(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double y = grid.nodes[j];
    const double g0 = m.g0_fn()(y);
    const Complex den = (zr - y) * (zr + y);
    const double num = 2.0 * y * k2 * g0 * g0;
    v[j] = grid.weights[j] * num / den;
    dv[j] = grid.weights[j] * (-2.0 * zr * num) / (den * den);
  }
  Complex s{}, ds{};
  for (std::size_t j = 0; j < v.size(); ++j) {
    s += v[j];
    ds += dv[j];
  }
  return {1.0 + s, z.real() < 0.0 ? -ds : ds};
}

// Root of the real monotone function f on [lo, hi] with sign change.
template <class F>
double bisect(F&& f, double lo, double hi) {
  double flo = f(lo);
  while (hi - lo > kBisectTol * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Complex polish(const KreinModel& m, Complex z) {
  for (int k = 0; k < kNewtonSteps; ++k) {
    const CharValue cv = char_with_derivative(m, z);
    if (cv.derivative == Complex{}) break;
    const Complex step = cv.value / cv.derivative;
    // stay on the axis the zero lives on
    z -= z.real() == 0.0 ? Complex(0.0, step.imag()) : Complex(step.real(), 0.0);
  }
  return z;
}

CharFunction zeros_impl(const KreinModel& m, bool strict) {
  CharFunction cf;
  if (m.kappa() == 0.0) return cf;
  const double k2 = m.kappa() * m.kappa();
  cf.c_at_0 = 1.0 - k2 * integral_i0(m.c(), m.profile());
  cf.c_at_1 = 1.0 - k2 * integral_i1(m.c(), m.profile());
  if (std::abs(cf.c_at_0) <= kDoubleZeroTol) {
    cf.regime = Regime::double_zero;
    cf.zeros.push_back({0.0, 2});
    return cf;
  }
  if (cf.c_at_0 < 0.0) {
    const auto f = [&](double u) { return char_with_derivative(m, Complex(0.0, u)).value.real(); };
    double hi = 1.0;
    while (f(hi) <= 0.0) hi *= 2.0;
    const double u0 = polish(m, Complex(0.0, bisect(f, 0.0, hi))).imag();
    cf.regime = Regime::imaginary_pair;
    cf.zeros = {{Complex(0.0, u0), 1}, {Complex(0.0, -u0), 1}};
    return cf;
  }
  if (cf.c_at_1 < 0.0) {
    const auto f = [&](double x) { return char_with_derivative(m, x).value.real(); };
    // C(1) itself sits on the slit end; bisect on the sign change inside (0, 1)
    double hi = 1.0 - 1e-3;
    while (f(hi) >= 0.0) hi = 1.0 - 0.5 * (1.0 - hi);
    const double x0 = polish(m, bisect(f, 0.0, hi)).real();
    cf.regime = Regime::real_pair;
    cf.zeros = {{x0, 1}, {-x0, 1}};
    return cf;
  }
  if (strict)
    throw Error(ErrorCode::regime_unsupported, "C(0) > 0 and C(1) >= 0 is not covered");
  return cf;
}

}  // namespace

Complex char_eval(const KreinModel& m, Complex z) { return char_with_derivative(m, z).value; }

Complex char_discrete(const KreinModel& m, Complex z) {
  std::vector<double> a(m.size()), zero(m.size(), 0.0);
  for (std::size_t j = 0; j < m.size(); ++j) a[j] = m.weights()[j] * m.g()[j] * m.h()[j];
  return 1.0 - kernels::cauchy_sum(m.nodes(), a, zero, z, 1);
}

Complex char_discrete_derivative(const KreinModel& m, Complex z) {
  std::vector<double> a(m.size()), zero(m.size(), 0.0);
  for (std::size_t j = 0; j < m.size(); ++j) a[j] = m.weights()[j] * m.g()[j] * m.h()[j];
  return kernels::cauchy_sum(m.nodes(), a, zero, z, 2);
}

BoundaryValues char_boundary(const KreinModel& m, double x) {
  if (m.kappa() == 0.0) return {};
  // C1 = 1 - PV int g h/(x - y) dy = 1 + PV int g h/(y - x) dy
  return {1.0 + distcore::pv_line(m.gh_fn(), x), m.gh_fn()(x)};
}

CharFunction find_zeros(const KreinModel& m) { return zeros_impl(m, true); }
CharFunction classify(const KreinModel& m) { return zeros_impl(m, false); }

}  // namespace spectral::krein
