//
// Copyright 2026 The OnAvg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef ONAVG_PARALLEL_H_
#define ONAVG_PARALLEL_H_

// Data-parallel kernels. Every kernel has an OpenMP implementation and a plain
// serial reference; both write results into index-addressed slots and reduce
// them in index order, so the output never depends on the thread count.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "onavg/random.h"

namespace onavg {

enum class ExecutionPolicy { kSerial, kParallel };

// Sets the OpenMP thread count used by kParallel kernels. Non-positive values
// restore the runtime default.
void SetParallelThreads(int threads);
int ParallelThreads();

// Calls fn(i) for i in [0, count); fn must only write state owned by index i.
template <typename Fn>
void ForEachIndex(std::int64_t count, ExecutionPolicy policy, Fn&& fn) {
  if (policy == ExecutionPolicy::kParallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) fn(i);
  } else {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
  }
}

// out[i] = fn(i) for i in [0, count).
template <typename Fn>
std::vector<double> MapIndices(std::int64_t count, ExecutionPolicy policy,
                               Fn&& fn) {
  std::vector<double> out(static_cast<std::size_t>(count));
  if (policy == ExecutionPolicy::kParallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) {
      out[static_cast<std::size_t>(i)] = fn(i);
    }
  } else {
    for (std::int64_t i = 0; i < count; ++i) {
      out[static_cast<std::size_t>(i)] = fn(i);
    }
  }
  return out;
}

// out[r] = fn(rng_r, r) where rng_r is the deterministic stream of
// replication r.
template <typename Fn>
std::vector<double> MapReplications(std::int64_t reps, std::uint64_t seed,
                                    StreamTag tag, ExecutionPolicy policy,
                                    Fn&& fn) {
  return MapIndices(reps, policy, [&](std::int64_t r) {
    Rng rng = MakeStream(seed, tag, static_cast<std::uint64_t>(r));
    return fn(rng, r);
  });
}

// Left-to-right sum; the fixed order is what makes reductions reproducible.
inline double OrderedSum(std::span<const double> values) {
  double total = 0.0;
  for (double v : values) total += v;
  return total;
}

inline double OrderedMax(std::span<const double> values) {
  double best = -std::numeric_limits<double>::infinity();
  for (double v : values) best = std::max(best, v);
  return best;
}

}  // namespace onavg

#endif  // ONAVG_PARALLEL_H_
