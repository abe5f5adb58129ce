/* Copyright 2026 The Palate Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/


#ifndef PALATE_PARALLEL_H_
#define PALATE_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace palate {

// Worker count to use: `requested` if positive, otherwise the PALATE_THREADS
// environment variable if set to a positive integer, otherwise the hardware
// concurrency (at least 1).
int ResolveThreadCount(int requested = 0);

// Calls fn(i) for every i in [0, count) on up to `threads` workers. Tasks are
// claimed dynamically, so callers must write results into per-index slots and
// reduce them afterwards for a deterministic outcome. The first exception
// thrown by any task is rethrown on the calling thread.
void ParallelFor(std::size_t count, int threads,
                 const std::function<void(std::size_t)>& fn);

}  // namespace palate

#endif  // PALATE_PARALLEL_H_
