#pragma once

#include <cstddef>
#include <functional>

namespace evlab {

/// Runs fn(i) for i in [0, count) on up to `threads` workers (0 means
/// hardware concurrency). Work is split into contiguous blocks, so callers
/// that write fn's result into slot i and reduce in index order get
/// bit-identical results for any thread count. The first exception by index
/// is rethrown.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

int resolve_threads(int requested);

}  // namespace evlab
