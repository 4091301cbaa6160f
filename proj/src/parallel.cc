// Copyright 2026 The BTER Toolkit Authors
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

#include "bter/parallel.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bter {

int ResolveThreads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

int WorkerCount(std::size_t num_tasks, int threads) {
  const auto limit = static_cast<std::size_t>(ResolveThreads(threads));
  return static_cast<int>(std::max<std::size_t>(1, std::min(limit, num_tasks)));
}

void ParallelFor(std::size_t num_tasks, int threads,
                 const std::function<void(std::size_t, int)>& fn) {
  if (num_tasks == 0) return;
  const int workers = WorkerCount(num_tasks, threads);
  if (workers == 1) {
    for (std::size_t t = 0; t < num_tasks; ++t) fn(t, 0);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto body = [&](int worker) {
    try {
      for (std::size_t t = next.fetch_add(1); t < num_tasks;
           t = next.fetch_add(1)) {
        fn(t, worker);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(num_tasks);
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (int w = 1; w < workers; ++w) pool.emplace_back(body, w);
  body(0);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace bter
