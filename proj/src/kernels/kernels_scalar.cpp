#include <cmath>

#include "reduce.hpp"
#include "spectral/kernels.hpp"

namespace spectral::kernels::scalar {

using detail::Pair;
using detail::pairwise_reduce;

double weighted_sum(std::span<const double> w, std::span<const double> v) {
  auto leaf = [&](std::size_t begin, std::size_t len) {
    double acc[kLanes] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t j = 0; j < len; j += kLanes) {
      for (std::size_t l = 0; l < kLanes; ++l) {
        const std::size_t i = begin + j + l;
        acc[l] += (j + l < len) ? w[i] * v[i] : 0.0;
      }
    }
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
  };
  return pairwise_reduce<double>(0, w.size(), leaf);
}

std::complex<double> cauchy_sum(std::span<const double> nodes, std::span<const double> a_re,
                                std::span<const double> a_im, std::complex<double> z,
                                int power) {
  const double zr = z.real();
  const double zi = z.imag();
  const bool has_im = !a_im.empty();
  auto term = [&](std::size_t i) {
    const double dr = zr - nodes[i];
    const double den = dr * dr + zi * zi;
    double q_re = dr / den;
    double q_im = -zi / den;
    if (power == 2) {
      const double t = q_re * q_im;
      q_re = q_re * q_re - q_im * q_im;
      q_im = t + t;
    }
    const double ar = a_re[i];
    const double ai = has_im ? a_im[i] : 0.0;
    return Pair{ar * q_re - ai * q_im, ar * q_im + ai * q_re};
  };
  auto leaf = [&](std::size_t begin, std::size_t len) {
    Pair acc[kLanes];
    for (std::size_t j = 0; j < len; j += kLanes) {
      for (std::size_t l = 0; l < kLanes; ++l) {
        const Pair t = (j + l < len) ? term(begin + j + l) : Pair{};
        acc[l].re += t.re;
        acc[l].im += t.im;
      }
    }
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
  };
  const Pair s = pairwise_reduce<Pair>(0, nodes.size(), leaf);
  return {s.re, s.im};
}

double pv_sum(std::span<const double> nodes, std::span<const double> w,
              std::span<const double> v, double pole, double v_pole, double slope,
              double delta) {
  auto leaf = [&](std::size_t begin, std::size_t len) {
    double acc[kLanes] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t j = 0; j < len; j += kLanes) {
      for (std::size_t l = 0; l < kLanes; ++l) {
        double t = 0.0;
        if (j + l < len) {
          const std::size_t i = begin + j + l;
          const double d = nodes[i] - pole;
          const double q = std::fabs(d) < delta ? slope : (v[i] - v_pole) / d;
          t = w[i] * q;
        }
        acc[l] += t;
      }
    }
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
  };
  return pairwise_reduce<double>(0, nodes.size(), leaf);
}

}  // namespace spectral::kernels::scalar
