#include <cmath>
#include <stdexcept>

#include "spectral/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define SPECTRAL_HAVE_X86 1
#endif

namespace spectral::kernels::avx2 {

#ifdef SPECTRAL_HAVE_X86

#define SPECTRAL_AVX2 __attribute__((target("avx2")))

namespace {

struct Pair {
  double re;
  double im;
};

// Lane mask for the last (possibly partial) vector of a leaf.
SPECTRAL_AVX2 inline __m256i tail_mask(std::size_t remaining) {
  const long long m0 = remaining > 0 ? -1 : 0;
  const long long m1 = remaining > 1 ? -1 : 0;
  const long long m2 = remaining > 2 ? -1 : 0;
  const long long m3 = remaining > 3 ? -1 : 0;
  return _mm256_set_epi64x(m3, m2, m1, m0);
}

SPECTRAL_AVX2 inline __m256d load(const double* p, std::size_t remaining) {
  if (remaining >= kLanes) return _mm256_loadu_pd(p);
  return _mm256_maskload_pd(p, tail_mask(remaining));
}

SPECTRAL_AVX2 inline double horizontal(__m256d acc) {
  alignas(32) double lanes[kLanes];
  _mm256_store_pd(lanes, acc);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

// ---- weighted_sum -------------------------------------------------------

SPECTRAL_AVX2 double ws_leaf(const double* w, const double* v, std::size_t len) {
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t j = 0; j < len; j += kLanes) {
    const std::size_t rem = len - j;
    const __m256d t = _mm256_mul_pd(load(w + j, rem), load(v + j, rem));
    acc = _mm256_add_pd(acc, t);
  }
  return horizontal(acc);
}

SPECTRAL_AVX2 double ws_tree(const double* w, const double* v, std::size_t len) {
  if (len <= kLeaf) return ws_leaf(w, v, len);
  const std::size_t blocks = (len + kLeaf - 1) / kLeaf;
  const std::size_t left = (blocks / 2) * kLeaf;
  const double a = ws_tree(w, v, left);
  const double b = ws_tree(w + left, v + left, len - left);
  return a + b;
}

// ---- cauchy_sum ---------------------------------------------------------

struct CauchyArgs {
  const double* nodes;
  const double* a_re;
  const double* a_im;  // may be null
  double zr;
  double zi;
  int power;
};

SPECTRAL_AVX2 Pair cauchy_leaf(const CauchyArgs& c, std::size_t begin, std::size_t len) {
  const __m256d zr = _mm256_set1_pd(c.zr);
  const __m256d zi = _mm256_set1_pd(c.zi);
  const __m256d nzi = _mm256_set1_pd(-c.zi);
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  for (std::size_t j = 0; j < len; j += kLanes) {
    const std::size_t rem = len - j;
    const std::size_t i = begin + j;
    const __m256i mask = tail_mask(rem);
    // Padding lanes get node = zr + 1 so that den stays finite; their
    // coefficients load as zero.
    __m256d x = load(c.nodes + i, rem);
    if (rem < kLanes) {
      const __m256d pad = _mm256_add_pd(zr, _mm256_set1_pd(1.0));
      x = _mm256_blendv_pd(pad, x, _mm256_castsi256_pd(mask));
    }
    const __m256d dr = _mm256_sub_pd(zr, x);
    const __m256d den = _mm256_add_pd(_mm256_mul_pd(dr, dr), _mm256_mul_pd(zi, zi));
    __m256d q_re = _mm256_div_pd(dr, den);
    __m256d q_im = _mm256_div_pd(nzi, den);
    if (c.power == 2) {
      const __m256d t = _mm256_mul_pd(q_re, q_im);
      q_re = _mm256_sub_pd(_mm256_mul_pd(q_re, q_re), _mm256_mul_pd(q_im, q_im));
      q_im = _mm256_add_pd(t, t);
    }
    const __m256d ar = load(c.a_re + i, rem);
    const __m256d ai = c.a_im ? load(c.a_im + i, rem) : _mm256_setzero_pd();
    const __m256d t_re = _mm256_sub_pd(_mm256_mul_pd(ar, q_re), _mm256_mul_pd(ai, q_im));
    const __m256d t_im = _mm256_add_pd(_mm256_mul_pd(ar, q_im), _mm256_mul_pd(ai, q_re));
    acc_re = _mm256_add_pd(acc_re, t_re);
    acc_im = _mm256_add_pd(acc_im, t_im);
  }
  return {horizontal(acc_re), horizontal(acc_im)};
}

SPECTRAL_AVX2 Pair cauchy_tree(const CauchyArgs& c, std::size_t begin, std::size_t len) {
  if (len <= kLeaf) return cauchy_leaf(c, begin, len);
  const std::size_t blocks = (len + kLeaf - 1) / kLeaf;
  const std::size_t left = (blocks / 2) * kLeaf;
  const Pair a = cauchy_tree(c, begin, left);
  const Pair b = cauchy_tree(c, begin + left, len - left);
  return {a.re + b.re, a.im + b.im};
}

// ---- pv_sum -------------------------------------------------------------

struct PvArgs {
  const double* nodes;
  const double* w;
  const double* v;
  double pole;
  double v_pole;
  double slope;
  double delta;
};

SPECTRAL_AVX2 double pv_leaf(const PvArgs& c, std::size_t begin, std::size_t len) {
  const __m256d pole = _mm256_set1_pd(c.pole);
  const __m256d vp = _mm256_set1_pd(c.v_pole);
  const __m256d slope = _mm256_set1_pd(c.slope);
  const __m256d delta = _mm256_set1_pd(c.delta);
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t j = 0; j < len; j += kLanes) {
    const std::size_t rem = len - j;
    const std::size_t i = begin + j;
    const __m256d d = _mm256_sub_pd(load(c.nodes + i, rem), pole);
    const __m256d absd = _mm256_andnot_pd(sign, d);
    const __m256d near = _mm256_cmp_pd(absd, delta, _CMP_LT_OQ);
    const __m256d quot = _mm256_div_pd(_mm256_sub_pd(load(c.v + i, rem), vp), d);
    const __m256d q = _mm256_blendv_pd(quot, slope, near);
    // Padding lanes carry w = 0 but q may be nan (0/0); mask them explicitly.
    __m256d t = _mm256_mul_pd(load(c.w + i, rem), q);
    if (rem < kLanes) {
      t = _mm256_blendv_pd(_mm256_setzero_pd(), t, _mm256_castsi256_pd(tail_mask(rem)));
    }
    acc = _mm256_add_pd(acc, t);
  }
  return horizontal(acc);
}

SPECTRAL_AVX2 double pv_tree(const PvArgs& c, std::size_t begin, std::size_t len) {
  if (len <= kLeaf) return pv_leaf(c, begin, len);
  const std::size_t blocks = (len + kLeaf - 1) / kLeaf;
  const std::size_t left = (blocks / 2) * kLeaf;
  const double a = pv_tree(c, begin, left);
  const double b = pv_tree(c, begin + left, len - left);
  return a + b;
}

}  // namespace

double weighted_sum(std::span<const double> w, std::span<const double> v) {
  return ws_tree(w.data(), v.data(), w.size());
}

std::complex<double> cauchy_sum(std::span<const double> nodes, std::span<const double> a_re,
                                std::span<const double> a_im, std::complex<double> z,
                                int power) {
  const CauchyArgs args{nodes.data(), a_re.data(), a_im.empty() ? nullptr : a_im.data(),
                        z.real(),     z.imag(),    power};
  const Pair s = cauchy_tree(args, 0, nodes.size());
  return {s.re, s.im};
}

double pv_sum(std::span<const double> nodes, std::span<const double> w,
              std::span<const double> v, double pole, double v_pole, double slope,
              double delta) {
  const PvArgs args{nodes.data(), w.data(), v.data(), pole, v_pole, slope, delta};
  return pv_tree(args, 0, nodes.size());
}

#else

double weighted_sum(std::span<const double>, std::span<const double>) {
  throw std::logic_error("avx2 kernels not compiled for this architecture");
}
std::complex<double> cauchy_sum(std::span<const double>, std::span<const double>,
                                std::span<const double>, std::complex<double>, int) {
  throw std::logic_error("avx2 kernels not compiled for this architecture");
}
double pv_sum(std::span<const double>, std::span<const double>, std::span<const double>,
              double, double, double, double) {
  throw std::logic_error("avx2 kernels not compiled for this architecture");
}

#endif

}  // namespace spectral::kernels::avx2
