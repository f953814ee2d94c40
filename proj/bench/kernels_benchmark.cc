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

// Serial reference vs OpenMP kernels. Arg 0 is serial, arg 1 parallel.

#include "benchmark/benchmark.h"
#include "onavg/data_model.h"
#include "onavg/estimators.h"
#include "onavg/exact_enumeration.h"
#include "onavg/lemma_suite.h"
#include "onavg/mechanisms.h"
#include "onavg/parallel.h"

namespace onavg {
namespace {

ExecutionPolicy PolicyOf(const benchmark::State& state) {
  return state.range(0) == 0 ? ExecutionPolicy::kSerial
                             : ExecutionPolicy::kParallel;
}

EstimatorConfig Config(const benchmark::State& state) {
  EstimatorConfig cfg;
  cfg.reps = 20000;
  cfg.seed = 1;
  cfg.policy = PolicyOf(state);
  return cfg;
}

void BM_OnAvgKlMean(benchmark::State& state) {
  const Mechanism mech = *Mechanism::Create(AbsoluteLoss{}, 1.0);
  const EstimatorConfig cfg = Config(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(OnAvgKl(mech, TruncatedNormalMean{}, 1, cfg));
  }
}
BENCHMARK(BM_OnAvgKlMean)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_GeneralizationRegression(benchmark::State& state) {
  const Mechanism mech = *Mechanism::Create(SquaredRegressionLoss{}, 1.0);
  const EstimatorConfig cfg = Config(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        OnAvgGeneralization(mech, UniformRegression{}, cfg));
  }
}
BENCHMARK(BM_GeneralizationRegression)
    ->Arg(0)
    ->Arg(1)
    ->Unit(benchmark::kMillisecond);

void BM_EnumerationBuild(benchmark::State& state) {
  const DiscreteInstance inst = DefaultDiscreteInstance(1.0);
  const std::vector<double> pmf = inst.model.pmf;
  for (auto _ : state) {
    benchmark::DoNotOptimize(DatasetEnumeration::Build(
        inst.mech, 14, pmf, kDefaultEnumerationCap, PolicyOf(state)));
  }
}
BENCHMARK(BM_EnumerationBuild)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_MutualInformation(benchmark::State& state) {
  DiscreteInstance inst = DefaultDiscreteInstance(1.0);
  inst.model.n = 12;
  for (auto _ : state) {
    benchmark::DoNotOptimize(MutualInformationExact(
        inst.mech, inst.model, kDefaultEnumerationCap, PolicyOf(state)));
  }
}
BENCHMARK(BM_MutualInformation)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_TableDpEpsilon(benchmark::State& state) {
  const DiscreteInstance inst = DefaultDiscreteInstance(1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        DpEpsilon(inst.mech, FiniteDomain{12}, PolicyOf(state)));
  }
}
BENCHMARK(BM_TableDpEpsilon)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace onavg

BENCHMARK_MAIN();
