// Copyright 2026 The cctopics authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CCTOPICS_SRC_PARALLEL_HPP_
#define CCTOPICS_SRC_PARALLEL_HPP_

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace cctopics {

// Index-sharded worker pool. Each index is processed exactly once; results
// must be written to per-index slots so the outcome never depends on thread
// scheduling. The first exception is rethrown on the caller thread.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  if (n == 0) return;
  std::size_t worker_count = threads > 0
                                 ? static_cast<std::size_t>(threads)
                                 : std::thread::hardware_concurrency();
  if (worker_count == 0) worker_count = 1;
  if (worker_count > n) worker_count = n;
  if (worker_count == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> workers;
  workers.reserve(worker_count);
  for (std::size_t t = 0; t < worker_count; ++t) {
    workers.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n || failed.load()) return;
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& worker : workers) worker.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace cctopics

#endif  // CCTOPICS_SRC_PARALLEL_HPP_
