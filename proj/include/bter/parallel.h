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

#ifndef BTER_PARALLEL_H_
#define BTER_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace bter {

// Resolves a requested worker count: values <= 0 mean "use the hardware
// concurrency".
int ResolveThreads(int requested);

// Runs fn(task, worker) for every task in [0, num_tasks) on up to `threads`
// workers with dynamic scheduling. Worker ids are dense in [0, workers).
// Callers are responsible for making results independent of which worker
// ran which task. Exceptions thrown by fn are rethrown on the caller.
void ParallelFor(std::size_t num_tasks, int threads,
                 const std::function<void(std::size_t task, int worker)>& fn);

// Number of workers ParallelFor would use.
int WorkerCount(std::size_t num_tasks, int threads);

}  // namespace bter

#endif  // BTER_PARALLEL_H_
