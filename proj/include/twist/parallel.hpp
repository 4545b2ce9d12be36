#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace twist {

/// Worker count: explicit value if positive, else TWIST_WORKERS, else the
/// hardware concurrency.
inline unsigned resolve_workers(unsigned requested = 0)
{
  if (requested > 0)
    return requested;
  if (auto const *env = std::getenv("TWIST_WORKERS")) {
    try {
      auto v = std::stoul(env);
      if (v > 0)
        return static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  auto hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

/// out[i] = f(i) for i < count. Items are claimed dynamically, results land
/// in their own slot, so the output never depends on scheduling. The first
/// exception (lowest index) is rethrown.
template<typename R, typename F>
std::vector<R> parallel_map(std::size_t count, unsigned workers, F &&f)
{
  std::vector<R> out(count);
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count ? count : 1)));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i)
      out[i] = f(i);
    return out;
  }

  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::size_t err_index = count;
  std::exception_ptr err;
  auto work = [&] {
    for (;;) {
      auto i = next.fetch_add(1);
      if (i >= count)
        return;
      try {
        out[i] = f(i);
      } catch (...) {
        std::lock_guard lock(err_mutex);
        if (i < err_index) {
          err_index = i;
          err = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back(work);
  for (auto &t : pool)
    t.join();
  if (err)
    std::rethrow_exception(err);
  return out;
}

} // namespace twist
