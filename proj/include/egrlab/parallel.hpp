#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace egrlab {

// Bounded worker pool over an index range. Work items must be independent
// and must not throw; results go into pre-sized slots so the outcome does
// not depend on scheduling.
inline void parallel_for(std::size_t count, int jobs,
                         const std::function<void(std::size_t)>& work) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      work(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  const std::size_t pool = std::min<std::size_t>(static_cast<std::size_t>(jobs), count);
  workers.reserve(pool);
  for (std::size_t w = 0; w < pool; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        work(i);
      }
    });
  }
  for (std::thread& t : workers) {
    t.join();
  }
}

}  // namespace egrlab
