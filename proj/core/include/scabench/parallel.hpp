#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace scabench {

// Applies fn to every element with at most `limit` workers. Results land at
// their input index, so the output order never depends on completion order.
// The first exception wins and is rethrown after all workers drain.
template <typename In, typename Fn>
auto parallel_map(const std::vector<In>& items, int limit, Fn&& fn)
    -> std::vector<decltype(fn(items.front()))> {
  using Out = decltype(fn(items.front()));
  std::vector<Out> results(items.size());
  if (items.empty()) return results;

  const int workers = std::max(1, std::min<int>(limit, static_cast<int>(items.size())));
  if (workers == 1) {
    for (size_t i = 0; i < items.size(); ++i) results[i] = fn(items[i]);
    return results;
  }

  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (;;) {
      const size_t index = next.fetch_add(1);
      if (index >= items.size() || failed.load()) return;
      try {
        results[index] = fn(items[index]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return results;
}

}  // namespace scabench
