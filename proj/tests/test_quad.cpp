#include <cmath>
#include <numbers>

#include "doctest.h"
#include "spectral/quad.hpp"

using namespace spectral;
using namespace spectral::quad;

namespace {
// Oracles evaluated offline with mpmath at 30 digits.
constexpr double kTwoShi1 = 2.11450175075145702914;
constexpr double kLog8Over5 = 0.470003629245735553650;
constexpr double kEMinus1 = 1.71828182845904523536;
}  // namespace

TEST_CASE("gauss_grid small rules") {
  const Grid g = gauss_grid(-1.0, 1.0, 2);
  REQUIRE(g.size() == 2);
  CHECK(g.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(g.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(g.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
  const Grid h = gauss_grid(0.0, 2.0, 2);
  CHECK(h.nodes[0] == doctest::Approx(1.0 - 1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(h.weights[1] == doctest::Approx(1.0).epsilon(1e-15));
  const double v = integrate([](double y) { return y; }, gauss_grid(1.0, 2.0, 64));
  CHECK(std::fabs(v - 1.5) <= 1e-14);
}

TEST_CASE("gauss_grid errors and determinism") {
  CHECK_THROWS_AS(gauss_grid(1.0, 1.0, 4), Error);
  try {
    gauss_grid(2.0, 1.0, 4);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_interval);
  }
  try {
    gauss_grid(0.0, 1.0, 1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_order);
  }
  const Grid a = gauss_grid(0.3, 1.7, 123);
  const Grid b = gauss_grid(0.3, 1.7, 123);
  CHECK(a.nodes == b.nodes);
  CHECK(a.weights == b.weights);
}

TEST_CASE("grid invariants") {
  for (int n : {2, 7, 64, 257, 1024}) {
    const Grid g = gauss_grid(1.0, 3.5, n);
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK(g.nodes[i] > 1.0);
      CHECK(g.nodes[i] < 3.5);
      CHECK(g.weights[i] > 0.0);
      if (i) CHECK(g.nodes[i] > g.nodes[i - 1]);
      s += g.weights[i];
    }
    CHECK(std::fabs(s - 2.5) <= 1e-13 * 2.5);
  }
  const Grid c = composite_grid(-1.0, 2.0, 7, 12);
  double s = 0.0;
  for (double w : c.weights) s += w;
  CHECK(std::fabs(s - 3.0) <= 3e-13);
  const double foci[] = {0.5};
  const Grid gg = graded_grid(-1.0, 2.0, foci, 1e-6, 16);
  s = 0.0;
  for (double w : gg.weights) s += w;
  CHECK(std::fabs(s - 3.0) <= 3e-13);
}

TEST_CASE("integrate examples") {
  CHECK(std::fabs(integrate([](double) { return 1.0; }, gauss_grid(0, 1, 8)) - 1.0) <= 1e-14);
  const double e = integrate([](double x) { return std::exp(x); }, gauss_grid(0, 1, 32));
  CHECK(std::fabs(e - kEMinus1) <= 1e-13);
  const double l = integrate([](double y) { return 2 * y / (4 + y * y); }, gauss_grid(1, 2, 64));
  CHECK(std::fabs(l - kLog8Over5) <= 1e-12);
  CHECK_THROWS_AS(integrate([](double x) { return 1.0 / (x - x); }, gauss_grid(0, 1, 4)), Error);
}

TEST_CASE("integrate is linear") {
  const Grid g = gauss_grid(-0.5, 2.0, 40);
  auto f = [](double x) { return Complex(std::sin(x), x * x); };
  auto h = [](double x) { return Complex(std::exp(-x), 1.0 / (3.0 + x)); };
  const Complex a{0.7, -1.2};
  const Complex b{-2.5, 0.4};
  const Complex lhs = integrate([&](double x) { return a * f(x) + b * h(x); }, g);
  const Complex rhs = a * integrate_complex(f, g) + b * integrate_complex(h, g);
  CHECK(std::abs(lhs - rhs) <= 1e-13 * std::abs(rhs));
}

TEST_CASE("doubling n never increases the error") {
  // Once an error reaches a few ulps it only fluctuates.
  const double kRoundoff = 8 * 2.2e-16 * kTwoShi1;
  double prev = 1e300;
  for (int n : {4, 8, 16, 32}) {
    const double err =
        std::fabs(integrate([](double x) { return std::exp(x); }, gauss_grid(0, 1, n)) - kEMinus1);
    CHECK(err <= std::max(prev, kRoundoff));
    prev = err;
  }
  prev = 1e300;
  for (int n : {4, 8, 16, 32, 64}) {
    const double err = std::fabs(pv_integral(RealFn([](double x) { return std::exp(x); }), 0.0, -1.0, 1.0, n) - kTwoShi1);
    CHECK(err <= std::max(prev, kRoundoff));
    prev = err;
  }
}

TEST_CASE("pv_integral examples") {
  CHECK(std::fabs(pv_integral(RealFn([](double) { return 1.0; }), 0.0, -1.0, 1.0, 16)) <= 1e-15);
  CHECK(std::fabs(pv_integral(RealFn([](double) { return 1.0; }), 1.0, 0.0, 2.0, 16)) <= 1e-15);
  const double v = pv_integral(RealFn([](double x) { return std::exp(x); }), 0.0, -1.0, 1.0, 32);
  CHECK(std::fabs(v - kTwoShi1) <= 1e-12);
  const Complex c = pv_integral(ComplexFn([](double x) { return Complex(std::exp(x), 2.0); }), 0.0,
                                -1.0, 1.0, 32);
  CHECK(std::abs(c - Complex(kTwoShi1, 0.0)) <= 1e-12);
  CHECK_THROWS_AS(pv_integral(RealFn([](double) { return 1.0; }), 2.0, 0.0, 1.0, 8), Error);
}

TEST_CASE("pv_integral of an even function about the pole vanishes") {
  const double pole = 0.3;
  auto f = [&](double x) { return std::cos(3.0 * (x - pole)) + (x - pole) * (x - pole); };
  const double v = pv_integral(RealFn(f), pole, pole - 1.1, pole + 1.1, 64);
  CHECK(std::fabs(v) <= 1e-12 * 2.21 * 2.0);
}

TEST_CASE("contour_integral examples") {
  const Circle unit{0.0, 1.0, 64};
  CHECK(std::abs(contour_integral([](Complex z) { return 1.0 / z; }, unit) - 1.0) <= 1e-13);
  CHECK(std::abs(contour_integral([](Complex z) { return 1.0 / (z - 2.0); }, unit)) <= 1e-13);
  const CMatrix A = CMatrix::diagonal({0.5, 3.0});
  const CMatrix P = contour_integral(
      [&](Complex z) { return inverse(z * CMatrix::identity(2) - A); }, Circle{0.0, 1.0, 256});
  CHECK((P - CMatrix::diagonal({1.0, 0.0})).frobenius() <= 1e-12);
}

TEST_CASE("contour_integral of an analytic function vanishes") {
  auto F = [](Complex z) { return std::exp(z) / (z - 5.0) + z * z; };
  for (int n : {64, 128, 256}) {
    CHECK(std::abs(contour_integral(F, Circle{{0.5, 0.5}, 2.0, n})) <= 1e-10);
  }
  CHECK_THROWS_AS(contour_integral([](Complex z) { return 1.0 / (z - 1.0); }, Circle{0.0, 1.0, 8}),
                  Error);
  CHECK_THROWS_AS(circle_points(Circle{0.0, 1.0, 9}), Error);
}

TEST_CASE("richardson_limit recovers model coefficients") {
  std::vector<double> u;
  std::vector<Complex> v;
  for (int j = 3; j <= 12; ++j) {
    const double h = std::ldexp(1.0, -j);
    u.push_back(h);
    v.push_back(Complex(1.25, -0.5) + 3.0 * h - 2.0 * h * std::log(h) + 0.75 * h * h);
  }
  CHECK(std::abs(richardson_limit(u, v) - Complex(1.25, -0.5)) <= 1e-12);
  CHECK_THROWS_AS(richardson_limit(std::vector<double>{}, std::vector<Complex>{}), Error);
}
