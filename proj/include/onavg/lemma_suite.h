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

#ifndef ONAVG_LEMMA_SUITE_H_
#define ONAVG_LEMMA_SUITE_H_

// Runnable checks of the privacy/generalization identities and inequalities
// satisfied by posterior-sampling mechanisms. Exact checks enumerate finite
// instances and use tolerances of at most 1e-10; Monte-Carlo checks state
// their tolerance as a multiple of the reported standard error.

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "onavg/data_model.h"
#include "onavg/estimators.h"
#include "onavg/mechanisms.h"

namespace onavg {

inline constexpr double kExactTolerance = 1e-10;
inline constexpr double kPostprocessingTolerance = 1e-12;
inline constexpr double kMaxEntTolerance = 1e-12;
inline constexpr double kDefaultMcSigmas = 3.0;

enum class Relation { kEqual, kLessEqual };

struct CheckResult {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  Relation relation = Relation::kEqual;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

// Builds a result whose pass flag follows from the relation and tolerance.
CheckResult Verdict(std::string name, double lhs, double rhs,
                    Relation relation, double tolerance,
                    std::string detail = "");

// `NAME lhs=<v> rhs=<v> tol=<v> PASS|FAIL`
std::string FormatReportLine(const CheckResult& result);

struct DiscreteInstance {
  Mechanism mech;
  DiscreteIid model;
};

struct InstanceShape {
  int num_symbols = 2;
  int n = 3;
  int num_hypotheses = 5;
  double gamma = 1.0;
  bool with_prior = true;
};

struct InstanceLimits {
  int max_symbols = 3;
  int max_n = 4;
  int max_hypotheses = 6;
  double gamma_min = 0.1;
  double gamma_max = 10.0;
};

// Loss entries uniform on [0, 1], strictly positive pmf and (optionally) a
// prior uniform on [0, 1], all drawn from `seed`.
absl::StatusOr<DiscreteInstance> MakeDiscreteInstance(std::uint64_t seed,
                                                      const InstanceShape& shape);
// Dimensions uniform in [2, max] (n in [1, max_n]), gamma log-uniform.
absl::StatusOr<DiscreteInstance> RandomDiscreteInstance(
    std::uint64_t seed, const InstanceLimits& limits = {});
// The built-in instance: 2 symbols, n = 3, 5 hypotheses.
DiscreteInstance DefaultDiscreteInstance(double gamma = 1.0);
// Every data symbol has the same loss row, so A(Z) ignores Z.
DiscreteInstance DataIndependentInstance(double gamma = 1.0);

// A first mechanism over grid H1 and, for every h1 in H1, a second mechanism
// chosen adaptively. All share the data domain.
struct AdaptivePair {
  Mechanism first;
  std::vector<Mechanism> second;
};

absl::StatusOr<AdaptivePair> RandomAdaptivePair(std::uint64_t seed,
                                                int num_symbols);

// on_avg_kl = gamma * generalization gap. Exact sides are compared to
// kExactTolerance; sampled ones to mc_sigmas combined standard errors.
absl::StatusOr<CheckResult> CheckKlGenEquivalence(
    const Mechanism& mech, const DataModel& model, const EstimatorConfig& cfg,
    double mc_sigmas = kDefaultMcSigmas);

// KL can only shrink under a block map.
CheckResult CheckPostprocessing(int trials, std::uint64_t seed);

absl::StatusOr<CheckResult> CheckGroupPrivacy(
    const Mechanism& mech, const DiscreteIid& model, int k_max,
    std::int64_t cap = kDefaultEnumerationCap);

// Two results: the composed bound and the per-pair chain-rule identity.
absl::StatusOr<std::vector<CheckResult>> CheckComposition(
    const AdaptivePair& pair, const DiscreteIid& model,
    std::int64_t cap = kDefaultEnumerationCap);

absl::StatusOr<CheckResult> CheckMaxInfo(
    const Mechanism& mech, const DiscreteIid& model,
    std::int64_t cap = kDefaultEnumerationCap);

// MI vs independent-pair KL, the Jensen-gap identity, and the two-sided
// subgaussian sandwich plus the subexponential upper bound on the structural
// generalization gap.
absl::StatusOr<std::vector<CheckResult>> CheckMutualInfo(
    const Mechanism& mech, const DiscreteIid& model,
    std::int64_t cap = kDefaultEnumerationCap);

// The Gibbs posterior minimizes the free energy over the simplex.
absl::StatusOr<CheckResult> CheckMaxEnt(const Mechanism& mech,
                                        const Dataset& data, int perturbations,
                                        std::uint64_t seed);

struct SuiteOptions {
  std::uint64_t seed = 7919;
  double mc_sigmas = kDefaultMcSigmas;
  std::int64_t mc_reps = 20000;
  ExecutionPolicy policy = ExecutionPolicy::kParallel;
};

// Every check on built-in instances derived from `options.seed`.
absl::StatusOr<std::vector<CheckResult>> RunLemmaSuite(
    const SuiteOptions& options);

}  // namespace onavg

#endif  // ONAVG_LEMMA_SUITE_H_
