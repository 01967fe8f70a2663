#pragma once

#include <cstddef>
#include <functional>

namespace shellrecon {

/// Worker count: SHELLRECON_THREADS if set to a positive integer, otherwise the hardware
/// concurrency (at least 1).
unsigned thread_count();

/// Runs body(i) for i in [0, count). Iterations are split into contiguous blocks, one per
/// worker; callers write results into pre-sized slots so output order never depends on
/// scheduling. Nested calls run serially. The first exception thrown by any iteration is
/// rethrown after all workers have joined.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace shellrecon
