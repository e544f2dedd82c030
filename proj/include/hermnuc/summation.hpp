#pragma once

#include <cstddef>
#include <span>

namespace hermnuc {

/// Pairwise (cascade) summation. The reduction tree depends only on the
/// length, so results are bit-reproducible for a fixed input order.
inline double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kBlock = 16;
  if (values.size() <= kBlock) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace hermnuc
