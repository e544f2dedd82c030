#pragma once

#include <cstddef>
#include <functional>

namespace hermnuc {

/// Worker count: hardware concurrency, capped by HERMNUC_THREADS when set.
std::size_t thread_count();

/// Runs body(begin, end) over disjoint contiguous chunks of [0, count).
/// Chunks write disjoint outputs, so results do not depend on scheduling.
void parallel_for(std::size_t count,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace hermnuc
