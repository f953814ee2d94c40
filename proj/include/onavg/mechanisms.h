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

#ifndef ONAVG_MECHANISMS_H_
#define ONAVG_MECHANISMS_H_

// Posterior-sampling (Gibbs) mechanisms
//
//   p(h | Z)  proportional to  exp(-gamma * sum_i loss(z_i, h) - r(h))
//
// for three loss families: the absolute structural loss |Z - h| on a scalar
// summary (a Laplace mechanism), the squared regression loss (y - x h)^2 with
// a flat prior (a Gaussian posterior), and an arbitrary finite loss table over
// a hypothesis grid with an optional prior r(h).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "onavg/distributions.h"
#include "onavg/parallel.h"

namespace onavg {

inline constexpr std::int64_t kDefaultEnumerationCap = 1'000'000;

struct AbsoluteLoss {};
struct SquaredRegressionLoss {};

// loss(z, h) over a finite data domain and hypothesis grid.
class TableLoss {
 public:
  static absl::StatusOr<TableLoss> Create(
      std::vector<double> z_domain, std::vector<double> h_grid,
      const std::vector<std::vector<double>>& loss);

  std::size_t num_symbols() const { return z_domain_.size(); }
  std::size_t num_hypotheses() const { return h_grid_.size(); }
  const std::vector<double>& z_domain() const { return z_domain_; }
  const std::vector<double>& h_grid() const { return h_grid_; }
  double loss(std::size_t z, std::size_t h) const {
    return values_[z * h_grid_.size() + h];
  }
  std::span<const double> row(std::size_t z) const {
    return {values_.data() + z * h_grid_.size(), h_grid_.size()};
  }

 private:
  TableLoss(std::vector<double> z_domain, std::vector<double> h_grid,
            std::vector<double> values)
      : z_domain_(std::move(z_domain)),
        h_grid_(std::move(h_grid)),
        values_(std::move(values)) {}
  std::vector<double> z_domain_;
  std::vector<double> h_grid_;
  std::vector<double> values_;
};

using LossModel = std::variant<AbsoluteLoss, SquaredRegressionLoss, TableLoss>;

class Mechanism {
 public:
  // `prior` is only accepted for TableLoss and must match the grid length.
  static absl::StatusOr<Mechanism> Create(
      LossModel loss, double gamma,
      std::optional<std::vector<double>> prior = std::nullopt);

  const LossModel& loss() const { return loss_; }
  double gamma() const { return gamma_; }
  const std::optional<std::vector<double>>& prior() const { return prior_; }
  // nullptr unless the loss is a TableLoss.
  const TableLoss* table() const { return std::get_if<TableLoss>(&loss_); }
  double prior_at(std::size_t h) const { return prior_ ? (*prior_)[h] : 0.0; }

  absl::StatusOr<Mechanism> WithGamma(double gamma) const;

 private:
  Mechanism(LossModel loss, double gamma,
            std::optional<std::vector<double>> prior)
      : loss_(std::move(loss)), gamma_(gamma), prior_(std::move(prior)) {}
  LossModel loss_;
  double gamma_;
  std::optional<std::vector<double>> prior_;
};

struct RegressionRecord {
  double x;
  double y;
  bool operator==(const RegressionRecord&) const = default;
};

class Dataset {
 public:
  using Records = std::variant<std::vector<double>,
                               std::vector<RegressionRecord>,
                               std::vector<std::size_t>>;

  // A single scalar summary, the input of a structural loss.
  static Dataset Summary(double z);
  static absl::StatusOr<Dataset> Regression(
      std::vector<RegressionRecord> records);
  // Indices into a TableLoss z_domain.
  static absl::StatusOr<Dataset> Symbols(std::vector<std::size_t> symbols);

  std::size_t size() const;
  const Records& records() const { return records_; }
  bool operator==(const Dataset&) const = default;

 private:
  friend absl::StatusOr<Dataset> Replace(const Dataset&,
                                         std::span<const std::size_t>,
                                         const Dataset&);
  explicit Dataset(Records records) : records_(std::move(records)) {}
  Records records_;
};

// Copy of `data` with records at `indices` replaced by the records of `fresh`.
absl::StatusOr<Dataset> Replace(const Dataset& data,
                                std::span<const std::size_t> indices,
                                const Dataset& fresh);

// Number of positions at which two equally sized datasets differ.
absl::StatusOr<std::size_t> HammingDistance(const Dataset& a,
                                            const Dataset& b);

absl::StatusOr<OutputDistribution> Posterior(const Mechanism& mech,
                                             const Dataset& data);

// Per-hypothesis total loss sum_i loss(z_i, h), accumulated from symbol
// counts so that it is invariant under record permutation.
std::vector<double> TableTotals(const TableLoss& table,
                                std::span<const std::size_t> symbols);

// Gibbs posterior of a TableLoss mechanism from precomputed totals.
absl::StatusOr<DiscreteDist> TablePosterior(const Mechanism& mech,
                                            std::span<const double> totals);

struct Interval {
  double lo;
  double hi;
};

// Range of the scalar summary fed to the absolute structural loss.
struct SummaryDomain {
  Interval summary;
};

// Boxes for x, y and the hypothesis of the squared regression loss.
struct RegressionDomain {
  Interval x;
  Interval y;
  Interval h;
};

// z_domain^n for a TableLoss mechanism; enumerated exactly.
struct FiniteDomain {
  int n = 1;
  std::int64_t enumeration_cap = kDefaultEnumerationCap;
};

using DataDomain = std::variant<SummaryDomain, RegressionDomain, FiniteDomain>;

// Summary range of the truncated-normal mean experiment.
inline constexpr SummaryDomain kMeanExperimentDomain{{-2.0, 2.0}};
// x in [-1, 1], y = x + noise in [-2, 2], hypotheses constrained to [-2, 2];
// sup (y - x h)^2 = 16.
inline constexpr RegressionDomain kRegressionExperimentDomain{
    {-1.0, 1.0}, {-2.0, 2.0}, {-2.0, 2.0}};

// sup |loss| over the regression boxes, attained at a corner.
double SquaredLossBound(const RegressionDomain& domain);

// Pure epsilon-DP of the mechanism over neighbouring datasets in `domain`:
// gamma * width for the absolute loss, 4 * B * gamma for the bounded squared
// loss, and the exact worst-case max-divergence for tables.
absl::StatusOr<double> DpEpsilon(
    const Mechanism& mech, const DataDomain& domain,
    ExecutionPolicy policy = ExecutionPolicy::kParallel);

}  // namespace onavg

#endif  // ONAVG_MECHANISMS_H_
