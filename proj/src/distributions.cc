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

#include "onavg/distributions.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace onavg {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNormalizationTolerance = 1e-12;

double LogSumExp(std::span<const double> values) {
  const double top = *std::max_element(values.begin(), values.end());
  double acc = 0.0;
  for (double v : values) acc += std::exp(v - top);
  return top + std::log(acc);
}

bool SameSupport(const DiscreteDist& p, const DiscreteDist& q) {
  return p.support() == q.support();
}

absl::Status FamilyMismatch() {
  return absl::InvalidArgumentError(
      "distributions belong to different families");
}

}  // namespace

absl::StatusOr<LaplaceDist> LaplaceDist::Create(double location,
                                                double scale) {
  if (!std::isfinite(location)) {
    return absl::InvalidArgumentError("Laplace location must be finite");
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("Laplace scale must be positive, got %g", scale));
  }
  return LaplaceDist(location, scale);
}

absl::StatusOr<GaussianDist> GaussianDist::Create(double mean,
                                                  double variance) {
  if (!std::isfinite(mean)) {
    return absl::InvalidArgumentError("Gaussian mean must be finite");
  }
  if (!(variance > 0.0) || !std::isfinite(variance)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("Gaussian variance must be positive, got %g",
                        variance));
  }
  return GaussianDist(mean, variance);
}

double GaussianDist::stddev() const { return std::sqrt(variance_); }

absl::StatusOr<DiscreteDist> DiscreteDist::Create(std::vector<double> support,
                                                  std::vector<double> probs) {
  if (probs.empty()) {
    return absl::InvalidArgumentError("discrete distribution needs support");
  }
  if (support.size() != probs.size()) {
    return absl::InvalidArgumentError(
        absl::StrFormat("support has %d points but %d probabilities",
                        support.size(), probs.size()));
  }
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      return absl::InvalidArgumentError(
          absl::StrFormat("invalid probability %g", p));
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    return absl::InvalidArgumentError(
        absl::StrFormat("probabilities sum to %.17g", total));
  }
  std::vector<double> log_probs(probs.size());
  std::transform(probs.begin(), probs.end(), log_probs.begin(),
                 [](double p) { return p > 0.0 ? std::log(p) : -kInf; });
  return DiscreteDist(std::move(support), std::move(probs),
                      std::move(log_probs));
}

absl::StatusOr<DiscreteDist> DiscreteDist::FromLogWeights(
    std::vector<double> support, std::span<const double> log_weights) {
  if (log_weights.empty()) {
    return absl::InvalidArgumentError("discrete distribution needs support");
  }
  if (support.size() != log_weights.size()) {
    return absl::InvalidArgumentError("support and weights differ in length");
  }
  for (double w : log_weights) {
    if (!std::isfinite(w)) {
      return absl::InvalidArgumentError(
          absl::StrFormat("non-finite Gibbs log-weight %g", w));
    }
  }
  const double log_norm = LogSumExp(log_weights);
  std::vector<double> probs(log_weights.size());
  std::vector<double> log_probs(log_weights.size());
  for (std::size_t i = 0; i < log_weights.size(); ++i) {
    log_probs[i] = log_weights[i] - log_norm;
    probs[i] = std::exp(log_probs[i]);
  }
  return DiscreteDist(std::move(support), std::move(probs),
                      std::move(log_probs));
}

DiscreteDist DiscreteDist::PointMass(double value) {
  return DiscreteDist({value}, {1.0}, {0.0});
}

absl::StatusOr<Partition> Partition::Create(
    std::vector<std::vector<std::size_t>> blocks, std::size_t support_size) {
  std::vector<bool> seen(support_size, false);
  std::size_t covered = 0;
  for (const auto& block : blocks) {
    if (block.empty()) {
      return absl::InvalidArgumentError("partition block is empty");
    }
    for (std::size_t i : block) {
      if (i >= support_size) {
        return absl::OutOfRangeError(
            absl::StrFormat("partition index %d outside support of size %d", i,
                            support_size));
      }
      if (seen[i]) {
        return absl::InvalidArgumentError(
            absl::StrFormat("index %d appears in two blocks", i));
      }
      seen[i] = true;
      ++covered;
    }
  }
  if (covered != support_size) {
    return absl::InvalidArgumentError("partition does not cover the support");
  }
  return Partition(std::move(blocks), support_size);
}

Partition Partition::Identity(std::size_t support_size) {
  std::vector<std::vector<std::size_t>> blocks(support_size);
  for (std::size_t i = 0; i < support_size; ++i) blocks[i] = {i};
  return Partition(std::move(blocks), support_size);
}

Partition Partition::SingleBlock(std::size_t support_size) {
  std::vector<std::size_t> all(support_size);
  for (std::size_t i = 0; i < support_size; ++i) all[i] = i;
  return Partition({std::move(all)}, support_size);
}

double Density(const LaplaceDist& dist, double h) {
  return std::exp(-std::abs(h - dist.location()) / dist.scale()) /
         (2.0 * dist.scale());
}

double Density(const GaussianDist& dist, double h) {
  const double d = h - dist.mean();
  return std::exp(-0.5 * d * d / dist.variance()) /
         std::sqrt(2.0 * std::numbers::pi * dist.variance());
}

absl::StatusOr<double> Mass(const DiscreteDist& dist, std::size_t index) {
  if (index >= dist.size()) {
    return absl::OutOfRangeError(absl::StrFormat(
        "support index %d out of range [0, %d)", index, dist.size()));
  }
  return dist.probs()[index];
}

double LogDensity(const LaplaceDist& dist, double h) {
  return -std::abs(h - dist.location()) / dist.scale() -
         std::log(2.0 * dist.scale());
}

double LogDensity(const GaussianDist& dist, double h) {
  const double d = h - dist.mean();
  return -0.5 * d * d / dist.variance() -
         0.5 * std::log(2.0 * std::numbers::pi * dist.variance());
}

namespace {

absl::StatusOr<std::size_t> IndexOutcome(const Outcome& h) {
  if (const auto* index = std::get_if<std::size_t>(&h)) return *index;
  return absl::InvalidArgumentError(
      "discrete distributions are indexed by support position");
}

absl::StatusOr<double> RealOutcome(const Outcome& h) {
  if (const auto* value = std::get_if<double>(&h)) return *value;
  return absl::InvalidArgumentError(
      "continuous distributions take a real hypothesis");
}

}  // namespace

absl::StatusOr<double> Density(const OutputDistribution& dist,
                               const Outcome& h) {
  if (const auto* d = std::get_if<DiscreteDist>(&dist)) {
    auto index = IndexOutcome(h);
    if (!index.ok()) return index.status();
    return Mass(*d, *index);
  }
  auto value = RealOutcome(h);
  if (!value.ok()) return value.status();
  if (const auto* d = std::get_if<LaplaceDist>(&dist)) {
    return Density(*d, *value);
  }
  return Density(std::get<GaussianDist>(dist), *value);
}

absl::StatusOr<double> LogDensity(const OutputDistribution& dist,
                                  const Outcome& h) {
  if (const auto* d = std::get_if<DiscreteDist>(&dist)) {
    auto index = IndexOutcome(h);
    if (!index.ok()) return index.status();
    if (*index >= d->size()) {
      return absl::OutOfRangeError("support index out of range");
    }
    return d->log_probs()[*index];
  }
  auto value = RealOutcome(h);
  if (!value.ok()) return value.status();
  if (const auto* d = std::get_if<LaplaceDist>(&dist)) {
    return LogDensity(*d, *value);
  }
  return LogDensity(std::get<GaussianDist>(dist), *value);
}

double Sample(const LaplaceDist& dist, Rng& rng) {
  const double magnitude = std::exponential_distribution<double>(1.0)(rng);
  const bool negative = (rng() >> 63) != 0;
  return dist.location() +
         (negative ? -magnitude : magnitude) * dist.scale();
}

double Sample(const GaussianDist& dist, Rng& rng) {
  return std::normal_distribution<double>(dist.mean(), dist.stddev())(rng);
}

std::size_t Sample(const DiscreteDist& dist, Rng& rng) {
  const double u = Uniform01(rng);
  double cumulative = 0.0;
  const auto& probs = dist.probs();
  for (std::size_t i = 0; i < probs.size(); ++i) {
    cumulative += probs[i];
    if (u < cumulative) return i;
  }
  // Rounding left u above the final cumulative sum; return the last atom
  // with positive mass.
  for (std::size_t i = probs.size(); i-- > 0;) {
    if (probs[i] > 0.0) return i;
  }
  return probs.size() - 1;
}

Outcome Sample(const OutputDistribution& dist, Rng& rng) {
  return std::visit(
      [&](const auto& d) -> Outcome { return Sample(d, rng); }, dist);
}

double HypothesisValue(const OutputDistribution& dist, const Outcome& h) {
  if (const auto* d = std::get_if<DiscreteDist>(&dist)) {
    return d->support()[std::get<std::size_t>(h)];
  }
  return std::get<double>(h);
}

double KlDivergence(const LaplaceDist& p, const LaplaceDist& q) {
  const double gap = std::abs(p.location() - q.location());
  if (p.scale() == q.scale()) {
    const double x = gap / p.scale();
    return x + std::expm1(-x);
  }
  return std::log(q.scale() / p.scale()) +
         (p.scale() * std::exp(-gap / p.scale()) + gap) / q.scale() - 1.0;
}

double KlDivergence(const GaussianDist& p, const GaussianDist& q) {
  const double gap = p.mean() - q.mean();
  return 0.5 * (std::log(q.variance() / p.variance()) +
                (p.variance() + gap * gap) / q.variance() - 1.0);
}

absl::StatusOr<double> KlDivergence(const DiscreteDist& p,
                                    const DiscreteDist& q) {
  if (!SameSupport(p, q)) {
    return absl::InvalidArgumentError("discrete supports differ");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.log_probs()[i] == -kInf) continue;
    if (q.log_probs()[i] == -kInf) return kInf;
    total += p.probs()[i] * (p.log_probs()[i] - q.log_probs()[i]);
  }
  // Rounding can leave -1e-17 for nearly equal inputs.
  return std::max(total, 0.0);
}

absl::StatusOr<double> KlDivergence(const OutputDistribution& p,
                                    const OutputDistribution& q) {
  if (p.index() != q.index()) return FamilyMismatch();
  if (const auto* lp = std::get_if<LaplaceDist>(&p)) {
    return KlDivergence(*lp, std::get<LaplaceDist>(q));
  }
  if (const auto* gp = std::get_if<GaussianDist>(&p)) {
    return KlDivergence(*gp, std::get<GaussianDist>(q));
  }
  return KlDivergence(std::get<DiscreteDist>(p), std::get<DiscreteDist>(q));
}

absl::StatusOr<EstimateReport> KlMonteCarlo(const OutputDistribution& p,
                                            const OutputDistribution& q,
                                            std::int64_t m, Rng& rng) {
  if (m < 2) return absl::InvalidArgumentError("need at least two samples");
  if (p.index() != q.index()) return FamilyMismatch();
  if (const auto* dp = std::get_if<DiscreteDist>(&p)) {
    if (!SameSupport(*dp, std::get<DiscreteDist>(q))) {
      return absl::InvalidArgumentError("discrete supports differ");
    }
  }
  std::vector<double> terms(static_cast<std::size_t>(m));
  for (auto& term : terms) {
    const Outcome h = Sample(p, rng);
    auto log_p = LogDensity(p, h);
    auto log_q = LogDensity(q, h);
    if (!log_p.ok()) return log_p.status();
    if (!log_q.ok()) return log_q.status();
    term = *log_q == -kInf ? kInf : *log_p - *log_q;
  }
  return SummarizeReplications(terms);
}

absl::StatusOr<double> MaxDivergence(const DiscreteDist& p,
                                     const DiscreteDist& q) {
  if (!SameSupport(p, q)) {
    return absl::InvalidArgumentError("discrete supports differ");
  }
  double best = -kInf;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.log_probs()[i] == -kInf) continue;
    if (q.log_probs()[i] == -kInf) return kInf;
    best = std::max(best, p.log_probs()[i] - q.log_probs()[i]);
  }
  // Both sum to one, so some atom has ratio >= 1.
  return std::max(best, 0.0);
}

absl::StatusOr<double> MaxDivergence(const OutputDistribution& p,
                                     const OutputDistribution& q) {
  if (p.index() != q.index()) return FamilyMismatch();
  if (const auto* dp = std::get_if<DiscreteDist>(&p)) {
    return MaxDivergence(*dp, std::get<DiscreteDist>(q));
  }
  if (const auto* lp = std::get_if<LaplaceDist>(&p)) {
    const auto& lq = std::get<LaplaceDist>(q);
    if (lp->scale() != lq.scale()) {
      return absl::UnimplementedError(
          "max-divergence of Laplace pairs needs equal scales");
    }
    return std::abs(lp->location() - lq.location()) / lp->scale();
  }
  return absl::UnimplementedError(
      "max-divergence is not implemented for Gaussian pairs");
}

double Entropy(const DiscreteDist& dist) {
  double total = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (dist.probs()[i] > 0.0) total -= dist.probs()[i] * dist.log_probs()[i];
  }
  return total;
}

absl::StatusOr<DiscreteDist> Coarsen(const DiscreteDist& dist,
                                     const Partition& partition) {
  if (partition.support_size() != dist.size()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "partition covers %d indices, distribution has %d",
        partition.support_size(), dist.size()));
  }
  const auto& blocks = partition.blocks();
  std::vector<double> support(blocks.size());
  std::vector<double> log_mass(blocks.size());
  bool any_empty = false;
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    support[j] = static_cast<double>(j);
    std::vector<double> members;
    for (std::size_t i : blocks[j]) {
      if (dist.log_probs()[i] != -kInf) members.push_back(dist.log_probs()[i]);
    }
    if (members.empty()) {
      log_mass[j] = -kInf;
      any_empty = true;
    } else {
      log_mass[j] = LogSumExp(members);
    }
  }
  if (!any_empty) return DiscreteDist::FromLogWeights(support, log_mass);
  std::vector<double> probs(blocks.size());
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    probs[j] = 0.0;
    for (std::size_t i : blocks[j]) probs[j] += dist.probs()[i];
  }
  return DiscreteDist::Create(std::move(support), std::move(probs));
}

}  // namespace onavg
