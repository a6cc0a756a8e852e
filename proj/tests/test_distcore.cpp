#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "spectral/distcore.hpp"
#include "spectral/quad.hpp"

using namespace spectral;
using namespace spectral::distcore;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInvE = 0.36787944117144233;
const Complex kI{0.0, 1.0};

std::vector<double> dyadic(int j0, int j1) {
  std::vector<double> u;
  for (int j = j0; j <= j1; ++j) u.push_back(std::ldexp(1.0, -j));
  return u;
}

TestFn1D lopsided() { return TestFn1D::rational_bump(-0.8, 1.1, {1.0, 0.6, 0.2}, 0); }

}  // namespace

TEST_CASE("apply examples") {
  const TestFn1D b = bump(-1, 1);
  CHECK(std::abs(apply(Dist1D::delta(0.0), b) - kInvE) <= 1e-16);
  CHECK(std::abs(apply(Dist1D::pv_power(0.0), b)) <= 1e-15);
  CHECK(std::abs(apply(Dist1D::boundary(0.0, +1), b) - Complex(0.0, -kPi * kInvE)) <= 1e-15);
  CHECK_THROWS_AS(apply(Dist1D::delta(0.0, 13), b), Error);
}

TEST_CASE("delta derivatives carry the (-1)^k sign") {
  const TestFn1D f = lopsided();
  for (int k = 0; k <= 12; ++k) {
    const double expect = (k % 2 ? -1.0 : 1.0) * f.derivative_at(0.2, k);
    CHECK(apply(Dist1D::delta(0.2, k), f).real() == expect);
  }
}

TEST_CASE("pv_power outside the support is the ordinary integral") {
  const TestFn1D f = bump(2, 3);
  const double ordinary =
      quad::integrate([&](double x) { return f(x) / x; }, quad::gauss_grid(2, 3, 128));
  CHECK(std::abs(apply(Dist1D::pv_power(0.0), f) - ordinary) <= 1e-15);
}

TEST_CASE("P/x^2 equals minus the derivative of P/x") {
  const TestFn1D f = lopsided();
  const double x0 = 0.15;
  const double h = 1e-4;
  // d/dx0 PV int f/(x-x0) = PV int f'/(x-x0); compare with centred difference.
  const double d = (pv_line(f, x0 + h) - pv_line(f, x0 - h)) / (2 * h);
  CHECK(std::abs(apply(Dist1D::pv_power(x0, 2), f) - d) <= 1e-6);
}

TEST_CASE("Plemelj split and jump consistency") {
  const TestFn1D f = lopsided();
  for (double x0 : {-0.3, 0.0, 0.4}) {
    const Complex p = apply(Dist1D::boundary(x0, +1), f);
    const Complex m = apply(Dist1D::boundary(x0, -1), f);
    const Complex pv = apply(Dist1D::pv_power(x0, 1), f);
    CHECK(std::abs(p + m - 2.0 * pv) <= 1e-15 * std::abs(pv) + 1e-15);
    CHECK(std::abs((m - p) - 2.0 * kPi * kI * f(x0)) <= 1e-14);
  }
}

TEST_CASE("plemelj_limit examples") {
  const auto u = dyadic(3, 12);
  const PlemeljResult even = plemelj_limit(bump(-1, 1), u);
  CHECK(std::abs(even.extrapolated - Complex(0.0, -kPi * kInvE)) <= 1e-6);
  CHECK(even.order >= 0.9);

  const TestFn1D far = bump(2, 3);
  const PlemeljResult r = plemelj_limit(far, u);
  const double ordinary =
      quad::integrate([&](double x) { return far(x) / x; }, quad::gauss_grid(2, 3, 128));
  CHECK(std::abs(r.extrapolated - ordinary) <= 1e-10);

  const TestFn1D odd = lopsided();
  const PlemeljResult s = plemelj_limit(odd, u);
  CHECK(std::abs(s.extrapolated - apply(Dist1D::boundary(0.0, +1), odd)) <= 1e-6);
  CHECK(s.order >= 0.9);

  std::vector<double> neg;
  for (double v : u) neg.push_back(-v);
  const PlemeljResult t = plemelj_limit(odd, neg);
  CHECK(std::abs(t.extrapolated - apply(Dist1D::boundary(0.0, -1), odd)) <= 1e-6);
}

TEST_CASE("plemelj_limit rejects bad sequences") {
  CHECK_THROWS_AS(plemelj_limit(bump(-1, 1), std::vector<double>{0.1, -0.05}), Error);
  CHECK_THROWS_AS(plemelj_limit(bump(-1, 1), std::vector<double>{0.1, 0.2}), Error);
  CHECK_THROWS_AS(plemelj_limit(bump(-1, 1), std::vector<double>{0.1, 0.0}), Error);
}

TEST_CASE("dbar identity") {
  const TestFn2D phi(bump(-1, 1), bump(-1, 1));
  const IdentityCheck c = dbar_identity_check(phi);
  CHECK(c.defect <= 1e-6);
  CHECK_THROWS_AS(dbar_identity_check(TestFn2D(bump(0.5, 1), bump(-1, 1))), Error);
  // x-odd factor: phi(0) = 0.
  const TestFn2D oddphi(bump(-1, 1) * TestFn1D::polynomial({0.0, 1.0}), bump(-1, 1));
  CHECK(std::abs(dbar_identity_check(oddphi).lhs) <= 1e-8);
}

TEST_CASE("jump formula: analytic F") {
  const TestFn2D phi(bump(-1.4, 1.4), bump(-1.4, 1.4));
  const auto c = jump_formula_check([](Complex z) { return 1.0 / (z - 5.0); }, no_jump(), phi);
  CHECK(std::abs(c.lhs) <= 1e-8);
  CHECK(std::abs(c.rhs) <= 1e-8);
}

TEST_CASE("jump formula: 1/z agrees with the dbar identity") {
  const TestFn2D phi(lopsided(), bump(-1, 1.2));
  const double hints[] = {0.0};
  const auto c = jump_formula_check([](Complex z) { return 1.0 / z; },
                                    point_jump(0.0, -2.0 * kPi * kI), phi, hints);
  const IdentityCheck d = dbar_identity_check(phi);
  CHECK(c.defect <= 1e-5);
  CHECK(std::abs(c.lhs - d.lhs) <= 1e-5 * std::max(1.0, std::abs(d.lhs)));
}

TEST_CASE("jump formula: Cauchy kernel at a real point") {
  const double w0 = 0.35;
  const TestFn2D phi(lopsided(), bump(-1, 1.2));
  const double hints[] = {w0};
  const auto c = jump_formula_check([&](Complex z) { return 1.0 / (z - w0); },
                                    point_jump(w0, -2.0 * kPi * kI), phi, hints);
  CHECK(c.defect <= 1e-5);
  CHECK(std::abs(c.rhs - kPi * phi(w0, 0.0)) <= 1e-14);
}

TEST_CASE("jump formula: continuous boundary values") {
  // F = Cauchy integral of a bump density rho: F(x +- i0) = PV -+ i pi rho,
  // so the jump is -2 pi i rho and the right side is pi int rho(x) phi(x, 0).
  const TestFn1D rho = bump(-0.5, 0.7);
  const auto F = [&](Complex z) { return -regularized_cauchy(rho, z.real(), -z.imag(), 12); };
  const auto jump = continuous_jump([&](double x) { return Complex(0.0, -kPi) * rho(x); },
                                    [&](double x) { return Complex(0.0, kPi) * rho(x); }, -0.5, 0.7);
  const TestFn2D phi(bump(-1, 1), bump(-0.6, 0.6));
  const auto c = jump_formula_check(F, jump, phi);
  CHECK(std::abs(c.rhs - kPi * integrate_line(rho * bump(-1, 1)) * phi.terms()[0].fy(0.0)) <= 1e-12);
  CHECK(c.defect <= 1e-5);
}

TEST_CASE("product of principal values") {
  const auto u = dyadic(4, 14);
  const PvProductCheck sym = pv_product_check(bump(-1, 1), bump(-1, 1), 0.0, u);
  CHECK(std::abs(sym.extrapolated - (-kPi * kPi * kInvE * kInvE)) <= 1e-4);
  CHECK(sym.defect <= 1e-4);
  const PvProductCheck outside = pv_product_check(bump(1, 2), bump(1.5, 3), -0.5, u);
  CHECK(outside.defect <= 1e-10);
  const PvProductCheck asym = pv_product_check(lopsided(), bump(-0.3, 0.9), 0.1, u);
  CHECK(asym.defect <= 1e-4);
  CHECK_THROWS_AS(pv_product_check(bump(-1, 1), bump(0.1, 2), 0.1, u), Error);
}

TEST_CASE("triple delta identity on products") {
  // int int int delta(x-y) delta(y-z) f(x) g(y) h(z) = int f g h: collapse x
  // onto y with the delta rule, then y onto z.
  const TestFn1D f = lopsided(), g = bump(-0.5, 1.5), h = bump(-1, 0.8);
  const double direct = integrate_line(f * g * h, 96);
  const double nested = quad::integrate(
      [&](double z) {
        const double inner = apply(Dist1D::delta(z), f * g).real();
        return inner * h(z);
      },
      quad::composite_grid(-1.0, 1.5, 8, 48));
  CHECK(std::fabs(direct - nested) <= 1e-10);
}
