#pragma once

#include <cstddef>
#include <vector>

namespace spectral {

/// Pairwise sum of items[begin, begin+len) with a fixed tree shape.
template <class T>
T pairwise_sum(const std::vector<T>& items, std::size_t begin, std::size_t len) {
  if (len == 1) return items[begin];
  const std::size_t half = len / 2;
  T left = pairwise_sum(items, begin, half);
  left += pairwise_sum(items, begin + half, len - half);
  return left;
}

template <class T>
T pairwise_sum(const std::vector<T>& items, T zero) {
  if (items.empty()) return zero;
  return pairwise_sum(items, 0, items.size());
}

}  // namespace spectral
