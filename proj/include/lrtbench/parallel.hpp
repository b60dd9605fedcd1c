#pragma once

#include <cstddef>
#include <functional>

namespace lrtbench {

/// Process-wide worker count used by the parallel loops. Defaults to the
/// hardware concurrency. Results never depend on this value: every loop body
/// writes only to its own index.
void set_thread_count(unsigned threads);
unsigned thread_count();

/// Calls body(i) for every i in [0, n). Indices are handed out dynamically; the
/// first exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace lrtbench
