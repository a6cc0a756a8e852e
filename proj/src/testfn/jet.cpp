#include "jet.hpp"

namespace spectral::testfn_detail {

Jet operator+(const Jet& a, const Jet& b) {
  Jet r;
  r.order = a.order;
  for (int k = 0; k <= r.order; ++k) r.c[k] = a.c[k] + b.c[k];
  return r;
}

Jet operator-(const Jet& a, const Jet& b) {
  Jet r;
  r.order = a.order;
  for (int k = 0; k <= r.order; ++k) r.c[k] = a.c[k] - b.c[k];
  return r;
}

Jet operator*(const Jet& a, const Jet& b) {
  Jet r;
  r.order = a.order;
  for (int k = 0; k <= r.order; ++k) {
    double s = 0.0;
    for (int j = 0; j <= k; ++j) s += a.c[j] * b.c[k - j];
    r.c[k] = s;
  }
  return r;
}

Jet operator*(double s, Jet a) {
  for (int k = 0; k <= a.order; ++k) a.c[k] *= s;
  return a;
}

Jet recip(const Jet& a) {
  Jet r;
  r.order = a.order;
  r.c[0] = 1.0 / a.c[0];
  for (int k = 1; k <= r.order; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += a.c[j] * r.c[k - j];
    r.c[k] = -s * r.c[0];
  }
  return r;
}

Jet exp(const Jet& a) {
  Jet r;
  r.order = a.order;
  r.c[0] = std::exp(a.c[0]);
  for (int k = 1; k <= r.order; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += j * a.c[j] * r.c[k - j];
    r.c[k] = s / k;
  }
  return r;
}

Jet log(const Jet& a) {
  Jet r;
  r.order = a.order;
  r.c[0] = std::log(a.c[0]);
  for (int k = 1; k <= r.order; ++k) {
    double s = 0.0;
    for (int j = 1; j < k; ++j) s += j * r.c[j] * a.c[k - j];
    r.c[k] = (a.c[k] - s / k) / a.c[0];
  }
  return r;
}

}  // namespace spectral::testfn_detail
