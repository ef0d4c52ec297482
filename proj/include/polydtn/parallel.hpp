#pragma once

#include <cstddef>
#include <functional>

namespace polydtn {

/// Thread count from POLYDTN_THREADS, else the hardware concurrency (>= 1).
std::size_t default_thread_count();

/// Runs task(i) for i in [0, count) on up to `threads` workers. The first
/// exception thrown by a task is rethrown after all workers stop.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& task);

}  // namespace polydtn
