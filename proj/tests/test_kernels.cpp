#include <algorithm>
#include <cstring>
#include <random>
#include <vector>

#include "doctest.h"
#include "spectral/kernels.hpp"

using namespace spectral;
using Complex = std::complex<double>;
namespace k = spectral::kernels;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof(double)) == 0; }

struct Data {
  std::vector<double> x, w, re, im;
};

Data make(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  Data d;
  for (std::size_t i = 0; i < n; ++i) {
    d.x.push_back(u(rng));
    d.w.push_back(0.5 + 0.25 * u(rng));
    d.re.push_back(u(rng));
    d.im.push_back(u(rng));
  }
  std::sort(d.x.begin(), d.x.end());
  return d;
}

const std::size_t kSizes[] = {0, 1, 3, 4, 5, 63, 64, 65, 127, 200, 1000, 4099};

}  // namespace

TEST_CASE("scalar and avx2 weighted sums are bit-identical") {
  if (!k::avx2_available()) return;
  for (std::size_t n : kSizes) {
    const Data d = make(n, 11 + n);
    CHECK(same_bits(k::scalar::weighted_sum(d.w, d.re), k::avx2::weighted_sum(d.w, d.re)));
  }
}

TEST_CASE("scalar and avx2 cauchy sums are bit-identical") {
  if (!k::avx2_available()) return;
  const Complex zs[] = {{0.3, 0.7}, {5.0, 0.0}, {-1.0, -1e-6}, {0.0, 1e-3}};
  for (std::size_t n : kSizes) {
    const Data d = make(n, 7 + n);
    for (Complex z : zs) {
      for (int power : {1, 2}) {
        const Complex a = k::scalar::cauchy_sum(d.x, d.re, d.im, z, power);
        const Complex b = k::avx2::cauchy_sum(d.x, d.re, d.im, z, power);
        CHECK(same_bits(a.real(), b.real()));
        CHECK(same_bits(a.imag(), b.imag()));
        const Complex c = k::scalar::cauchy_sum(d.x, d.re, {}, z, power);
        const Complex e = k::avx2::cauchy_sum(d.x, d.re, {}, z, power);
        CHECK(same_bits(c.real(), e.real()));
        CHECK(same_bits(c.imag(), e.imag()));
      }
    }
  }
}

TEST_CASE("scalar and avx2 principal value sums are bit-identical") {
  if (!k::avx2_available()) return;
  for (std::size_t n : kSizes) {
    Data d = make(n, 3 + n);
    const double pole = n > 2 ? d.x[n / 2] : 0.1;  // one node sits on the pole
    const double a = k::scalar::pv_sum(d.x, d.w, d.re, pole, 0.25, -1.5, 1e-6);
    const double b = k::avx2::pv_sum(d.x, d.w, d.re, pole, 0.25, -1.5, 1e-6);
    CHECK(same_bits(a, b));
  }
}

TEST_CASE("cauchy sum matches the naive complex loop") {
  const Data d = make(300, 5);
  const Complex z{0.4, 0.9};
  Complex naive1{}, naive2{};
  for (std::size_t i = 0; i < d.x.size(); ++i) {
    const Complex a{d.re[i], d.im[i]};
    naive1 += a / (z - d.x[i]);
    naive2 += a / ((z - d.x[i]) * (z - d.x[i]));
  }
  for (k::Isa isa : {k::Isa::scalar, k::Isa::avx2}) {
    k::force_isa(isa);
    CHECK(std::abs(k::cauchy_sum(d.x, d.re, d.im, z, 1) - naive1) < 1e-12 * std::abs(naive1) + 1e-13);
    CHECK(std::abs(k::cauchy_sum(d.x, d.re, d.im, z, 2) - naive2) < 1e-12 * std::abs(naive2) + 1e-13);
  }
  k::force_isa(k::Isa::avx2);
}

TEST_CASE("dispatch honours forced selection") {
  k::force_isa(k::Isa::scalar);
  CHECK(k::active_isa() == k::Isa::scalar);
  k::force_isa(k::Isa::avx2);
  CHECK(k::active_isa() == (k::avx2_available() ? k::Isa::avx2 : k::Isa::scalar));
  CHECK(k::isa_name(k::Isa::scalar) == "scalar");
}
