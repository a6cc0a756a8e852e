#pragma once

// Truncated Taylor series ("jets"): c[k] = f^(k)(x0)/k!, k = 0..order.

#include <array>
#include <cmath>

namespace spectral::testfn_detail {

inline constexpr int kJetMax = 48;

struct Jet {
  int order = 0;
  std::array<double, kJetMax + 1> c{};

  static Jet constant(int order, double v) {
    Jet j;
    j.order = order;
    j.c[0] = v;
    return j;
  }
  static Jet variable(int order, double x0, double slope) {
    Jet j = constant(order, x0);
    if (order >= 1) j.c[1] = slope;
    return j;
  }
  bool is_zero() const {
    for (int k = 0; k <= order; ++k)
      if (c[k] != 0.0) return false;
    return true;
  }
};

Jet operator+(const Jet& a, const Jet& b);
Jet operator-(const Jet& a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator*(double s, Jet a);
Jet recip(const Jet& a);
Jet exp(const Jet& a);
Jet log(const Jet& a);

}  // namespace spectral::testfn_detail
