#pragma once

#include <cstddef>
#include <functional>

namespace gk {

// Worker count: GK_THREADS if set (>= 1), else hardware concurrency.
unsigned thread_count();

// Runs fn(i) for i in [0, n) on up to thread_count() threads. Exceptions from
// workers are rethrown on the calling thread (the first one wins).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace gk
