#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace rgi {

// Runs fn(task, worker) for every task on a small pool; the first exception is rethrown.
inline void run_tasks(int ntasks, int threads, const std::function<void(int, int)> &fn)
{
  threads = std::max(1, std::min(threads, ntasks));
  if (threads == 1) {
    for (int t = 0; t < ntasks; ++t)
      fn(t, 0);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex err_mu;
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      try {
        for (int t; (t = next++) < ntasks;)
          fn(t, w);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!err)
          err = std::current_exception();
        next = ntasks;
      }
    });
  for (auto &th : pool)
    th.join();
  if (err)
    std::rethrow_exception(err);
}

} // namespace rgi
