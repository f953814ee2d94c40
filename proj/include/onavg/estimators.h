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

#ifndef ONAVG_ESTIMATORS_H_
#define ONAVG_ESTIMATORS_H_

// Estimators of on-average KL-privacy, on-average generalization, excess
// risk and the information quantities of posterior-sampling mechanisms.
//
// Finite models (DiscreteSummary, DiscreteIid) are enumerated exactly when the
// number of weighted terms is at most `EstimatorConfig::enumeration_cap`;
// otherwise, and for the continuous models, replications are sampled. Each
// replication r draws from its own stream derived from (seed, estimator, r),
// so reports are bitwise reproducible under any thread count.

#include <cstdint>

#include "absl/status/statusor.h"
#include "onavg/data_model.h"
#include "onavg/distributions.h"
#include "onavg/estimate.h"
#include "onavg/mechanisms.h"
#include "onavg/parallel.h"

namespace onavg {

enum class RiskMode {
  // Closed-form population risk R(h).
  kAnalytic,
  // R(h) estimated on `mc_samples` fresh ghost records per replication.
  kGhostSample,
};

struct EstimatorConfig {
  std::int64_t reps = 10000;
  std::int64_t mc_samples = 1000;
  std::uint64_t seed = 0;
  ExecutionPolicy policy = ExecutionPolicy::kParallel;
  RiskMode risk_mode = RiskMode::kAnalytic;
  std::int64_t enumeration_cap = kDefaultEnumerationCap;
};

// E_{Z, z_1..k} KL(A(Z) || A(Z with its first k records replaced)).
absl::StatusOr<EstimateReport> OnAvgKl(const Mechanism& mech,
                                       const DataModel& model, int k,
                                       const EstimatorConfig& cfg);

// Signed E[R(h) - Rhat(h, Z)] for h ~ A(Z), for the unscaled per-record loss.
absl::StatusOr<EstimateReport> OnAvgGeneralization(const Mechanism& mech,
                                                   const DataModel& model,
                                                   const EstimatorConfig& cfg);

// E R(h) - min_h R(h) for h ~ A(Z).
absl::StatusOr<EstimateReport> ExcessRisk(const Mechanism& mech,
                                          const DataModel& model,
                                          const EstimatorConfig& cfg);

// I(A(Z); Z) in nats, by enumeration of z_domain^n.
absl::StatusOr<double> MutualInformationExact(
    const Mechanism& mech, const DiscreteIid& model,
    std::int64_t cap = kDefaultEnumerationCap,
    ExecutionPolicy policy = ExecutionPolicy::kParallel);

// E_{Z, Z' independent} KL(A(Z) || A(Z')).
absl::StatusOr<double> IndependentPairKlExact(
    const Mechanism& mech, const DiscreteIid& model,
    std::int64_t cap = kDefaultEnumerationCap,
    ExecutionPolicy policy = ExecutionPolicy::kParallel);

// E_Z E_{h|Z} [E_{Z'} log p(h|Z') - log E_{Z'} p(h|Z')], the (nonpositive)
// Jensen term that separates mutual information from the independent-pair KL.
absl::StatusOr<double> JensenGapExact(
    const Mechanism& mech, const DiscreteIid& model,
    std::int64_t cap = kDefaultEnumerationCap,
    ExecutionPolicy policy = ExecutionPolicy::kParallel);

// Pure max-information: max over all Z, Z' in z_domain^n of D_inf.
absl::StatusOr<double> MaxInformationExact(
    const Mechanism& mech, const DiscreteIid& model,
    std::int64_t cap = kDefaultEnumerationCap,
    ExecutionPolicy policy = ExecutionPolicy::kParallel);

// Half the range of the structural loss sum_i loss(z_i, h) over the support
// of D^n, maximized over h.
absl::StatusOr<double> SubgaussianSigma(const Mechanism& mech,
                                        const DiscreteIid& model);

// -(1/gamma) H(q) + sum_h q(h) (sum_i loss(z_i, h) + r(h) / gamma).
absl::StatusOr<double> FreeEnergy(const DiscreteDist& q, const Mechanism& mech,
                                  const Dataset& data);

}  // namespace onavg

#endif  // ONAVG_ESTIMATORS_H_
