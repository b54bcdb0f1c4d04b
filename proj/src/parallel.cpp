#include "ffdist/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ffdist {

namespace {

std::atomic<unsigned> g_thread_limit{0};
thread_local bool t_inside_parallel = false;

}  // namespace

void set_thread_limit(unsigned threads) noexcept { g_thread_limit.store(threads); }

unsigned thread_limit() noexcept {
  const unsigned limit = g_thread_limit.load();
  if (limit != 0) return limit;
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(thread_limit(), count);
  if (workers <= 1 || t_inside_parallel) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }

  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = count * w / workers;
    const std::size_t end = count * (w + 1) / workers;
    pool.emplace_back([&, begin, end] {
      t_inside_parallel = true;
      try {
        for (std::size_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace ffdist
