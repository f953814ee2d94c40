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

#include "onavg/parallel.h"

#include <omp.h>

namespace onavg {
namespace {

int default_threads = -1;

}  // namespace

void SetParallelThreads(int threads) {
  if (default_threads < 0) default_threads = omp_get_max_threads();
  omp_set_num_threads(threads > 0 ? threads : default_threads);
}

int ParallelThreads() { return omp_get_max_threads(); }

}  // namespace onavg
