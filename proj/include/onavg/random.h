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

#ifndef ONAVG_RANDOM_H_
#define ONAVG_RANDOM_H_

#include <cstdint>
#include <random>

namespace onavg {

using Rng = std::mt19937_64;

// Stream tags keep estimators that share a master seed statistically
// independent of each other.
enum class StreamTag : std::uint64_t {
  kOnAvgKl = 1,
  kGeneralization = 2,
  kExcessRisk = 3,
  kInstance = 4,
  kPostprocessing = 5,
  kMaxEnt = 6,
  kKlMonteCarlo = 7,
};

inline std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic stream for replication `index` of the estimator identified by
// `tag`. Depends only on its arguments, never on the executing thread.
inline Rng MakeStream(std::uint64_t seed, StreamTag tag, std::uint64_t index) {
  std::uint64_t state = SplitMix64(seed);
  state = SplitMix64(state ^ static_cast<std::uint64_t>(tag));
  state = SplitMix64(state ^ index);
  return Rng(state);
}

inline double Uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace onavg

#endif  // ONAVG_RANDOM_H_
