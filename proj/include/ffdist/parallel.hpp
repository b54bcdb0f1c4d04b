#pragma once

#include <cstddef>
#include <functional>

namespace ffdist {

// Worker cap for parallel_for; 0 means hardware concurrency.
void set_thread_limit(unsigned threads) noexcept;
unsigned thread_limit() noexcept;

// Runs body(i) for i in [0, count) over contiguous blocks. Nested calls run
// serially on the calling thread. Callers keep results in per-index slots so
// the output never depends on the worker count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace ffdist
