#pragma once

#include <cstddef>
#include <utility>

#include "spectral/kernels.hpp"

namespace spectral::kernels::detail {

// Blocked pairwise reduction. `leaf(begin, len)` sums at most kLeaf terms with
// kLanes interleaved accumulators; leaves are combined pairwise so that the
// tree shape only depends on the number of terms.
template <class T, class Leaf>
T pairwise_reduce(std::size_t begin, std::size_t len, const Leaf& leaf) {
  if (len <= kLeaf) return leaf(begin, len);
  const std::size_t blocks = (len + kLeaf - 1) / kLeaf;
  const std::size_t left = (blocks / 2) * kLeaf;
  T a = pairwise_reduce<T>(begin, left, leaf);
  T b = pairwise_reduce<T>(begin + left, len - left, leaf);
  return a + b;
}

struct Pair {
  double re = 0.0;
  double im = 0.0;
  Pair operator+(const Pair& o) const { return {re + o.re, im + o.im}; }
};

}  // namespace spectral::kernels::detail
