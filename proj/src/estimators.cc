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

#include "onavg/estimators.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"
#include "onavg/exact_enumeration.h"
#include "onavg/status_macros.h"

namespace onavg {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

absl::Status CheckConfig(const EstimatorConfig& cfg) {
  if (cfg.reps < 2) return absl::InvalidArgumentError("reps must be >= 2");
  if (cfg.mc_samples < 1) {
    return absl::InvalidArgumentError("mc_samples must be >= 1");
  }
  if (cfg.enumeration_cap < 1) {
    return absl::InvalidArgumentError("enumeration cap must be positive");
  }
  return absl::OkStatus();
}

absl::Status CheckCompatible(const Mechanism& mech, const DataModel& model) {
  RETURN_IF_ERROR(ValidateModel(model));
  const bool summary_model = std::holds_alternative<TruncatedNormalMean>(model) ||
                             std::holds_alternative<DiscreteSummary>(model);
  if (std::holds_alternative<AbsoluteLoss>(mech.loss()) && summary_model) {
    return absl::OkStatus();
  }
  if (std::holds_alternative<SquaredRegressionLoss>(mech.loss()) &&
      std::holds_alternative<UniformRegression>(model)) {
    return absl::OkStatus();
  }
  if (const TableLoss* table = mech.table()) {
    if (const auto* iid = std::get_if<DiscreteIid>(&model)) {
      if (iid->pmf.size() != table->num_symbols()) {
        return absl::InvalidArgumentError(
            "pmf length does not match the loss table's data domain");
      }
      return absl::OkStatus();
    }
  }
  return absl::InvalidArgumentError(
      "data model does not match the mechanism's loss family");
}

// Runs one fallible computation per replication and summarizes; the first
// failing replication in index order determines the returned error.
template <typename Fn>
absl::StatusOr<EstimateReport> Replicate(const EstimatorConfig& cfg,
                                         StreamTag tag, Fn&& fn) {
  std::vector<absl::Status> errors(static_cast<std::size_t>(cfg.reps));
  const auto values = MapReplications(
      cfg.reps, cfg.seed, tag, cfg.policy, [&](Rng& rng, std::int64_t r) {
        absl::StatusOr<double> v = fn(rng);
        if (!v.ok()) {
          errors[static_cast<std::size_t>(r)] = v.status();
          return kNaN;
        }
        return *v;
      });
  for (const auto& status : errors) {
    if (!status.ok()) return status;
  }
  return SummarizeReplications(values);
}

double Loss(const Mechanism& mech, const Dataset& data, std::size_t i,
            const Outcome& h) {
  const auto& records = data.records();
  if (const auto* summaries = std::get_if<std::vector<double>>(&records)) {
    return std::abs((*summaries)[i] - std::get<double>(h));
  }
  if (const auto* pairs = std::get_if<std::vector<RegressionRecord>>(&records)) {
    const double r = (*pairs)[i].y - (*pairs)[i].x * std::get<double>(h);
    return r * r;
  }
  const auto& symbols = std::get<std::vector<std::size_t>>(records);
  return mech.table()->loss(symbols[i], std::get<std::size_t>(h));
}

double EmpiricalRisk(const Mechanism& mech, const Dataset& data,
                     const Outcome& h) {
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) total += Loss(mech, data, i, h);
  return total / static_cast<double>(data.size());
}

// R(h) = sum_z pmf(z) loss(z, h) over the grid.
std::vector<double> TableRisk(const TableLoss& table,
                              const std::vector<double>& pmf) {
  std::vector<double> risk(table.num_hypotheses(), 0.0);
  for (std::size_t z = 0; z < table.num_symbols(); ++z) {
    for (std::size_t h = 0; h < risk.size(); ++h) {
      risk[h] += pmf[z] * table.loss(z, h);
    }
  }
  return risk;
}

// Closed-form population risk of a sampled outcome.
class AnalyticRisk {
 public:
  AnalyticRisk(const Mechanism& mech, const DataModel& model)
      : model_(model) {
    if (const auto* iid = std::get_if<DiscreteIid>(&model)) {
      table_risk_ = TableRisk(*mech.table(), iid->pmf);
    }
  }

  double operator()(const Outcome& h) const {
    if (const auto* m = std::get_if<TruncatedNormalMean>(&model_)) {
      return SummaryRisk(*m, std::get<double>(h));
    }
    if (const auto* m = std::get_if<DiscreteSummary>(&model_)) {
      return DiscreteSummaryRisk(*m, std::get<double>(h));
    }
    if (const auto* m = std::get_if<UniformRegression>(&model_)) {
      return RegressionRisk(*m, std::get<double>(h));
    }
    return table_risk_[std::get<std::size_t>(h)];
  }

  double Minimum() const {
    if (const auto* m = std::get_if<TruncatedNormalMean>(&model_)) {
      return SummaryRisk(*m, SummaryRiskMinimizer(*m));
    }
    if (const auto* m = std::get_if<DiscreteSummary>(&model_)) {
      // Piecewise linear and convex: the minimum sits on a data value.
      double best = kInf;
      for (double v : m->values) best = std::min(best, DiscreteSummaryRisk(*m, v));
      return best;
    }
    if (const auto* m = std::get_if<UniformRegression>(&model_)) {
      return RegressionRisk(*m, m->true_h);
    }
    return *std::min_element(table_risk_.begin(), table_risk_.end());
  }

 private:
  const DataModel& model_;
  std::vector<double> table_risk_;
};

double GhostRisk(const Mechanism& mech, const DataModel& model,
                 const Outcome& h, std::int64_t samples, Rng& rng) {
  double total = 0.0;
  if (std::holds_alternative<TruncatedNormalMean>(model) ||
      std::holds_alternative<DiscreteSummary>(model)) {
    for (std::int64_t j = 0; j < samples; ++j) {
      const Dataset ghost = SampleRecords(model, 1, rng);
      total += Loss(mech, ghost, 0, h);
    }
    return total / static_cast<double>(samples);
  }
  const Dataset ghost =
      SampleRecords(model, static_cast<int>(samples), rng);
  for (std::size_t i = 0; i < ghost.size(); ++i) total += Loss(mech, ghost, i, h);
  return total / static_cast<double>(samples);
}

bool DiscreteSummaryExact(const DiscreteSummary& model,
                          const EstimatorConfig& cfg) {
  const auto m = static_cast<std::int64_t>(model.values.size());
  return m * m <= cfg.enumeration_cap;
}

// E_{h ~ Laplace(mu, b)} |v - h|.
double LaplaceAbsoluteMoment(double mu, double b, double v) {
  const double gap = std::abs(v - mu);
  return gap + b * std::exp(-gap / b);
}

// sum_i p_i sum_j p_j E_{h ~ Laplace(v_i, b)} |v_j - h|.
double DiscreteSummaryPosteriorRisk(const DiscreteSummary& model, double b) {
  double total = 0.0;
  for (std::size_t i = 0; i < model.values.size(); ++i) {
    double inner = 0.0;
    for (std::size_t j = 0; j < model.values.size(); ++j) {
      inner += model.pmf[j] *
               LaplaceAbsoluteMoment(model.values[i], b, model.values[j]);
    }
    total += model.pmf[i] * inner;
  }
  return total;
}

absl::StatusOr<DatasetEnumeration> Enumerate(const Mechanism& mech,
                                             const DiscreteIid& model,
                                             std::int64_t cap,
                                             ExecutionPolicy policy) {
  RETURN_IF_ERROR(CheckCompatible(mech, model));
  return DatasetEnumeration::Build(mech, model.n, model.pmf, cap, policy);
}

absl::Status CheckPairCap(const DiscreteIid& model, std::size_t symbols,
                          std::int64_t cap) {
  if (CappedPower(static_cast<std::int64_t>(symbols), 2 * model.n, cap) >
      cap) {
    return absl::ResourceExhaustedError(
        absl::StrFormat("%d^%d dataset pairs exceed the enumeration cap of %d",
                        symbols, 2 * model.n, cap));
  }
  return absl::OkStatus();
}

std::vector<double> MarginalOutput(const DatasetEnumeration& all) {
  const std::size_t num_h = all.posterior(0).size();
  std::vector<double> marginal(num_h, 0.0);
  for (std::int64_t z = 0; z < all.count(); ++z) {
    const double w = all.weight(z);
    if (w == 0.0) continue;
    const auto& probs = all.posterior(z).probs();
    for (std::size_t h = 0; h < num_h; ++h) marginal[h] += w * probs[h];
  }
  return marginal;
}

absl::StatusOr<EstimateReport> TableOnAvgKlExact(const Mechanism& mech,
                                                 const DiscreteIid& model,
                                                 int k,
                                                 const EstimatorConfig& cfg) {
  ASSIGN_OR_RETURN(DatasetEnumeration all,
                   Enumerate(mech, model, cfg.enumeration_cap, cfg.policy));
  const auto symbols = static_cast<std::int64_t>(all.num_symbols());
  const std::int64_t fresh_count = CappedPower(symbols, k, cfg.enumeration_cap);
  std::vector<double> fresh_weight(static_cast<std::size_t>(fresh_count));
  for (std::int64_t f = 0; f < fresh_count; ++f) {
    double w = 1.0;
    std::int64_t rest = f;
    for (int d = 0; d < k; ++d) {
      w *= model.pmf[static_cast<std::size_t>(rest % symbols)];
      rest /= symbols;
    }
    fresh_weight[static_cast<std::size_t>(f)] = w;
  }
  const auto terms = MapIndices(all.count(), cfg.policy, [&](std::int64_t z) {
    const double w = all.weight(z);
    if (w == 0.0) return 0.0;
    double inner = 0.0;
    for (std::int64_t f = 0; f < fresh_count; ++f) {
      const double fw = fresh_weight[static_cast<std::size_t>(f)];
      if (fw == 0.0) continue;
      const std::int64_t other = all.ReplacePrefix(z, k, f);
      inner += fw * *KlDivergence(all.posterior(z), all.posterior(other));
    }
    return w * inner;
  });
  return ExactReport(OrderedSum(terms), all.count() * fresh_count);
}

}  // namespace

absl::StatusOr<EstimateReport> OnAvgKl(const Mechanism& mech,
                                       const DataModel& model, int k,
                                       const EstimatorConfig& cfg) {
  RETURN_IF_ERROR(CheckConfig(cfg));
  RETURN_IF_ERROR(CheckCompatible(mech, model));
  if (k < 1 || k > DatasetSize(model)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "group size %d outside [1, %d]", k, DatasetSize(model)));
  }
  if (const auto* m = std::get_if<DiscreteSummary>(&model);
      m != nullptr && DiscreteSummaryExact(*m, cfg)) {
    const double b = 1.0 / mech.gamma();
    double total = 0.0;
    for (std::size_t i = 0; i < m->values.size(); ++i) {
      const LaplaceDist p = *LaplaceDist::Create(m->values[i], b);
      double inner = 0.0;
      for (std::size_t j = 0; j < m->values.size(); ++j) {
        inner += m->pmf[j] *
                 KlDivergence(p, *LaplaceDist::Create(m->values[j], b));
      }
      total += m->pmf[i] * inner;
    }
    return ExactReport(total, static_cast<std::int64_t>(m->values.size() *
                                                        m->values.size()));
  }
  if (const auto* m = std::get_if<DiscreteIid>(&model)) {
    const auto symbols = static_cast<std::int64_t>(m->pmf.size());
    if (CappedPower(symbols, m->n + k, cfg.enumeration_cap) <=
        cfg.enumeration_cap) {
      return TableOnAvgKlExact(mech, *m, k, cfg);
    }
  }
  std::vector<std::size_t> replaced(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) replaced[static_cast<std::size_t>(i)] = i;
  return Replicate(cfg, StreamTag::kOnAvgKl,
                   [&](Rng& rng) -> absl::StatusOr<double> {
                     const Dataset data = SampleDataset(model, rng);
                     const Dataset fresh = SampleRecords(model, k, rng);
                     ASSIGN_OR_RETURN(Dataset neighbour,
                                      Replace(data, replaced, fresh));
                     ASSIGN_OR_RETURN(OutputDistribution p,
                                      Posterior(mech, data));
                     ASSIGN_OR_RETURN(OutputDistribution q,
                                      Posterior(mech, neighbour));
                     return KlDivergence(p, q);
                   });
}

absl::StatusOr<EstimateReport> OnAvgGeneralization(const Mechanism& mech,
                                                   const DataModel& model,
                                                   const EstimatorConfig& cfg) {
  RETURN_IF_ERROR(CheckConfig(cfg));
  RETURN_IF_ERROR(CheckCompatible(mech, model));
  if (const auto* m = std::get_if<DiscreteSummary>(&model);
      m != nullptr && DiscreteSummaryExact(*m, cfg)) {
    const double b = 1.0 / mech.gamma();
    // The empirical term E|v_i - h| for h ~ Laplace(v_i, b) is b.
    return ExactReport(DiscreteSummaryPosteriorRisk(*m, b) - b,
                       static_cast<std::int64_t>(m->values.size() *
                                                 m->values.size()));
  }
  if (const auto* m = std::get_if<DiscreteIid>(&model)) {
    const auto symbols = static_cast<std::int64_t>(m->pmf.size());
    if (CappedPower(symbols, m->n, cfg.enumeration_cap) <=
        cfg.enumeration_cap) {
      ASSIGN_OR_RETURN(DatasetEnumeration all,
                       Enumerate(mech, *m, cfg.enumeration_cap, cfg.policy));
      const TableLoss& table = *mech.table();
      const std::vector<double> risk = TableRisk(table, m->pmf);
      const double n = m->n;
      const auto terms =
          MapIndices(all.count(), cfg.policy, [&](std::int64_t z) {
            const double w = all.weight(z);
            if (w == 0.0) return 0.0;
            const auto totals = TableTotals(table, all.Symbols(z));
            const auto& probs = all.posterior(z).probs();
            double gap = 0.0;
            for (std::size_t h = 0; h < probs.size(); ++h) {
              gap += probs[h] * (risk[h] - totals[h] / n);
            }
            return w * gap;
          });
      return ExactReport(OrderedSum(terms), all.count());
    }
  }
  const AnalyticRisk analytic(mech, model);
  return Replicate(
      cfg, StreamTag::kGeneralization,
      [&](Rng& rng) -> absl::StatusOr<double> {
        const Dataset data = SampleDataset(model, rng);
        ASSIGN_OR_RETURN(OutputDistribution posterior, Posterior(mech, data));
        const Outcome h = Sample(posterior, rng);
        const double risk =
            cfg.risk_mode == RiskMode::kAnalytic
                ? analytic(h)
                : GhostRisk(mech, model, h, cfg.mc_samples, rng);
        return risk - EmpiricalRisk(mech, data, h);
      });
}

absl::StatusOr<EstimateReport> ExcessRisk(const Mechanism& mech,
                                          const DataModel& model,
                                          const EstimatorConfig& cfg) {
  RETURN_IF_ERROR(CheckConfig(cfg));
  RETURN_IF_ERROR(CheckCompatible(mech, model));
  const AnalyticRisk analytic(mech, model);
  const double minimum = analytic.Minimum();
  if (const auto* m = std::get_if<DiscreteSummary>(&model);
      m != nullptr && DiscreteSummaryExact(*m, cfg)) {
    return ExactReport(
        DiscreteSummaryPosteriorRisk(*m, 1.0 / mech.gamma()) - minimum,
        static_cast<std::int64_t>(m->values.size() * m->values.size()));
  }
  if (const auto* m = std::get_if<DiscreteIid>(&model)) {
    const auto symbols = static_cast<std::int64_t>(m->pmf.size());
    if (CappedPower(symbols, m->n, cfg.enumeration_cap) <=
        cfg.enumeration_cap) {
      ASSIGN_OR_RETURN(DatasetEnumeration all,
                       Enumerate(mech, *m, cfg.enumeration_cap, cfg.policy));
      const std::vector<double> risk = TableRisk(*mech.table(), m->pmf);
      const auto terms =
          MapIndices(all.count(), cfg.policy, [&](std::int64_t z) {
            const double w = all.weight(z);
            if (w == 0.0) return 0.0;
            const auto& probs = all.posterior(z).probs();
            double expected = 0.0;
            for (std::size_t h = 0; h < probs.size(); ++h) {
              expected += probs[h] * (risk[h] - minimum);
            }
            return w * expected;
          });
      return ExactReport(OrderedSum(terms), all.count());
    }
  }
  return Replicate(cfg, StreamTag::kExcessRisk,
                   [&](Rng& rng) -> absl::StatusOr<double> {
                     const Dataset data = SampleDataset(model, rng);
                     ASSIGN_OR_RETURN(OutputDistribution posterior,
                                      Posterior(mech, data));
                     return analytic(Sample(posterior, rng)) - minimum;
                   });
}

absl::StatusOr<double> MutualInformationExact(const Mechanism& mech,
                                              const DiscreteIid& model,
                                              std::int64_t cap,
                                              ExecutionPolicy policy) {
  ASSIGN_OR_RETURN(DatasetEnumeration all, Enumerate(mech, model, cap, policy));
  const std::vector<double> marginal = MarginalOutput(all);
  std::vector<double> log_marginal(marginal.size());
  for (std::size_t h = 0; h < marginal.size(); ++h) {
    log_marginal[h] = std::log(marginal[h]);
  }
  const auto terms = MapIndices(all.count(), policy, [&](std::int64_t z) {
    const double w = all.weight(z);
    if (w == 0.0) return 0.0;
    const DiscreteDist& p = all.posterior(z);
    double inner = 0.0;
    for (std::size_t h = 0; h < p.size(); ++h) {
      inner += p.probs()[h] * (p.log_probs()[h] - log_marginal[h]);
    }
    return w * inner;
  });
  return std::max(0.0, OrderedSum(terms));
}

absl::StatusOr<double> IndependentPairKlExact(const Mechanism& mech,
                                              const DiscreteIid& model,
                                              std::int64_t cap,
                                              ExecutionPolicy policy) {
  ASSIGN_OR_RETURN(DatasetEnumeration all, Enumerate(mech, model, cap, policy));
  RETURN_IF_ERROR(CheckPairCap(model, all.num_symbols(), cap));
  const auto terms = MapIndices(all.count(), policy, [&](std::int64_t z) {
    const double w = all.weight(z);
    if (w == 0.0) return 0.0;
    double inner = 0.0;
    for (std::int64_t other = 0; other < all.count(); ++other) {
      const double w_other = all.weight(other);
      if (w_other == 0.0) continue;
      inner += w_other * *KlDivergence(all.posterior(z), all.posterior(other));
    }
    return w * inner;
  });
  return OrderedSum(terms);
}

absl::StatusOr<double> JensenGapExact(const Mechanism& mech,
                                      const DiscreteIid& model,
                                      std::int64_t cap,
                                      ExecutionPolicy policy) {
  ASSIGN_OR_RETURN(DatasetEnumeration all, Enumerate(mech, model, cap, policy));
  const std::vector<double> marginal = MarginalOutput(all);
  const std::size_t num_h = marginal.size();
  // E_{Z'} log p(h | Z') per hypothesis.
  std::vector<double> mean_log(num_h, 0.0);
  for (std::int64_t z = 0; z < all.count(); ++z) {
    const double w = all.weight(z);
    if (w == 0.0) continue;
    const auto& log_probs = all.posterior(z).log_probs();
    for (std::size_t h = 0; h < num_h; ++h) mean_log[h] += w * log_probs[h];
  }
  const auto terms = MapIndices(all.count(), policy, [&](std::int64_t z) {
    const double w = all.weight(z);
    if (w == 0.0) return 0.0;
    const auto& probs = all.posterior(z).probs();
    double inner = 0.0;
    for (std::size_t h = 0; h < num_h; ++h) {
      inner += probs[h] * (mean_log[h] - std::log(marginal[h]));
    }
    return w * inner;
  });
  return OrderedSum(terms);
}

absl::StatusOr<double> MaxInformationExact(const Mechanism& mech,
                                           const DiscreteIid& model,
                                           std::int64_t cap,
                                           ExecutionPolicy policy) {
  ASSIGN_OR_RETURN(DatasetEnumeration all, Enumerate(mech, model, cap, policy));
  RETURN_IF_ERROR(CheckPairCap(model, all.num_symbols(), cap));
  const auto worst = MapIndices(all.count(), policy, [&](std::int64_t z) {
    double best = 0.0;
    for (std::int64_t other = 0; other < all.count(); ++other) {
      best = std::max(best, *MaxDivergence(all.posterior(z),
                                           all.posterior(other)));
    }
    return best;
  });
  return OrderedMax(worst);
}

absl::StatusOr<double> SubgaussianSigma(const Mechanism& mech,
                                        const DiscreteIid& model) {
  RETURN_IF_ERROR(CheckCompatible(mech, model));
  const TableLoss& table = *mech.table();
  double widest = 0.0;
  for (std::size_t h = 0; h < table.num_hypotheses(); ++h) {
    double lo = kInf;
    double hi = -kInf;
    for (std::size_t z = 0; z < table.num_symbols(); ++z) {
      if (model.pmf[z] == 0.0) continue;
      lo = std::min(lo, table.loss(z, h));
      hi = std::max(hi, table.loss(z, h));
    }
    widest = std::max(widest, hi - lo);
  }
  // Range of a sum of n i.i.d. records is n times the per-record range.
  return model.n * widest / 2.0;
}

absl::StatusOr<double> FreeEnergy(const DiscreteDist& q, const Mechanism& mech,
                                  const Dataset& data) {
  const TableLoss* table = mech.table();
  if (table == nullptr) {
    return absl::InvalidArgumentError("free energy needs a TableLoss mechanism");
  }
  if (q.support() != table->h_grid()) {
    return absl::InvalidArgumentError(
        "distribution support differs from the hypothesis grid");
  }
  const auto* symbols =
      std::get_if<std::vector<std::size_t>>(&data.records());
  if (symbols == nullptr) {
    return absl::InvalidArgumentError("table loss takes symbol records");
  }
  for (std::size_t z : *symbols) {
    if (z >= table->num_symbols()) {
      return absl::OutOfRangeError("symbol outside the data domain");
    }
  }
  const auto totals = TableTotals(*table, *symbols);
  double energy = 0.0;
  for (std::size_t h = 0; h < q.size(); ++h) {
    energy += q.probs()[h] * (totals[h] + mech.prior_at(h) / mech.gamma());
  }
  return energy - Entropy(q) / mech.gamma();
}

}  // namespace onavg
