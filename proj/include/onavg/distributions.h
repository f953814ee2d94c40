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

#ifndef ONAVG_DISTRIBUTIONS_H_
#define ONAVG_DISTRIBUTIONS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "onavg/estimate.h"
#include "onavg/random.h"

namespace onavg {

class LaplaceDist {
 public:
  static absl::StatusOr<LaplaceDist> Create(double location, double scale);

  double location() const { return location_; }
  double scale() const { return scale_; }

 private:
  LaplaceDist(double location, double scale)
      : location_(location), scale_(scale) {}
  double location_;
  double scale_;
};

class GaussianDist {
 public:
  static absl::StatusOr<GaussianDist> Create(double mean, double variance);

  double mean() const { return mean_; }
  double variance() const { return variance_; }
  double stddev() const;

 private:
  GaussianDist(double mean, double variance)
      : mean_(mean), variance_(variance) {}
  double mean_;
  double variance_;
};

// Finite distribution over labeled hypothesis points. Log-probabilities are
// stored next to the probabilities so that masses far below the double
// underflow threshold still give finite log-ratios.
class DiscreteDist {
 public:
  // Probabilities must be nonnegative and sum to 1 within 1e-12.
  static absl::StatusOr<DiscreteDist> Create(std::vector<double> support,
                                             std::vector<double> probs);
  // p_i proportional to exp(log_weights_i), normalized by log-sum-exp. Every
  // weight must be finite.
  static absl::StatusOr<DiscreteDist> FromLogWeights(
      std::vector<double> support, std::span<const double> log_weights);
  static DiscreteDist PointMass(double value);

  std::size_t size() const { return probs_.size(); }
  const std::vector<double>& support() const { return support_; }
  const std::vector<double>& probs() const { return probs_; }
  const std::vector<double>& log_probs() const { return log_probs_; }

 private:
  DiscreteDist(std::vector<double> support, std::vector<double> probs,
               std::vector<double> log_probs)
      : support_(std::move(support)),
        probs_(std::move(probs)),
        log_probs_(std::move(log_probs)) {}
  std::vector<double> support_;
  std::vector<double> probs_;
  std::vector<double> log_probs_;
};

using OutputDistribution = std::variant<LaplaceDist, GaussianDist, DiscreteDist>;

// A draw from an OutputDistribution: a real hypothesis for the continuous
// families, a support index for DiscreteDist.
using Outcome = std::variant<double, std::size_t>;

// Disjoint blocks of support indices covering {0, ..., support_size - 1}; the
// discrete form of a deterministic post-processing map.
class Partition {
 public:
  static absl::StatusOr<Partition> Create(
      std::vector<std::vector<std::size_t>> blocks, std::size_t support_size);
  static Partition Identity(std::size_t support_size);
  static Partition SingleBlock(std::size_t support_size);

  std::size_t support_size() const { return support_size_; }
  const std::vector<std::vector<std::size_t>>& blocks() const {
    return blocks_;
  }

 private:
  Partition(std::vector<std::vector<std::size_t>> blocks,
            std::size_t support_size)
      : blocks_(std::move(blocks)), support_size_(support_size) {}
  std::vector<std::vector<std::size_t>> blocks_;
  std::size_t support_size_;
};

double Density(const LaplaceDist& dist, double h);
double Density(const GaussianDist& dist, double h);
absl::StatusOr<double> Mass(const DiscreteDist& dist, std::size_t index);
absl::StatusOr<double> Density(const OutputDistribution& dist,
                               const Outcome& h);

double LogDensity(const LaplaceDist& dist, double h);
double LogDensity(const GaussianDist& dist, double h);
absl::StatusOr<double> LogDensity(const OutputDistribution& dist,
                                  const Outcome& h);

double Sample(const LaplaceDist& dist, Rng& rng);
double Sample(const GaussianDist& dist, Rng& rng);
std::size_t Sample(const DiscreteDist& dist, Rng& rng);
Outcome Sample(const OutputDistribution& dist, Rng& rng);

// Hypothesis value of an outcome (support label for discrete draws).
double HypothesisValue(const OutputDistribution& dist, const Outcome& h);

// KL(P || Q) in nats. Returns +infinity (not an error) when Q has zero mass
// where P does not.
double KlDivergence(const LaplaceDist& p, const LaplaceDist& q);
double KlDivergence(const GaussianDist& p, const GaussianDist& q);
absl::StatusOr<double> KlDivergence(const DiscreteDist& p,
                                    const DiscreteDist& q);
absl::StatusOr<double> KlDivergence(const OutputDistribution& p,
                                    const OutputDistribution& q);

// Mean of log p(h) - log q(h) over m draws h ~ P.
absl::StatusOr<EstimateReport> KlMonteCarlo(const OutputDistribution& p,
                                            const OutputDistribution& q,
                                            std::int64_t m, Rng& rng);

// sup_h log p(h)/q(h). Supported for discrete pairs and same-scale Laplace
// pairs only.
absl::StatusOr<double> MaxDivergence(const DiscreteDist& p,
                                     const DiscreteDist& q);
absl::StatusOr<double> MaxDivergence(const OutputDistribution& p,
                                     const OutputDistribution& q);

// Shannon entropy in nats.
double Entropy(const DiscreteDist& dist);

// Image of `dist` under the block map; block j is relabeled as hypothesis j.
absl::StatusOr<DiscreteDist> Coarsen(const DiscreteDist& dist,
                                     const Partition& partition);

}  // namespace onavg

#endif  // ONAVG_DISTRIBUTIONS_H_
