#pragma once

#include <cstddef>
#include <functional>

namespace cmc {

/// Worker count: CMC_THREADS if set and positive, else the hardware count.
std::size_t thread_count();

/// Calls fn(i) for i in [0, n), split into contiguous blocks across threads.
/// fn must only write to outputs owned by its index.
void parallel_rows(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace cmc
