#pragma once

#include <cstddef>
#include <functional>

namespace strand::parallel {

/// Thread cap. Initialized from AFFINE_STRAND_THREADS (0 or unset = auto);
/// settable programmatically for tests.
std::size_t thread_cap();
void set_thread_cap(std::size_t n);

/// Runs fn(begin, end) over contiguous chunks of [0, n). Chunk boundaries
/// depend only on (n, cap), and chunks write disjoint ranges, so results are
/// identical to the serial path. Falls back to serial below `grain`.
void parallel_for(std::size_t n, std::size_t grain,
                  const std::function<void(std::size_t, std::size_t)>& fn);

} // namespace strand::parallel
