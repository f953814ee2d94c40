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

#include "onavg/mechanisms.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"
#include "onavg/exact_enumeration.h"
#include "onavg/status_macros.h"

namespace onavg {
namespace {

// Sum of terms in sorted order, independent of the order they were given in.
double SortedSum(std::vector<double> terms) {
  std::sort(terms.begin(), terms.end());
  double total = 0.0;
  for (double t : terms) total += t;
  return total;
}

absl::StatusOr<OutputDistribution> RegressionPosterior(
    double gamma, const std::vector<RegressionRecord>& records) {
  std::vector<double> xx(records.size());
  std::vector<double> xy(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    xx[i] = records[i].x * records[i].x;
    xy[i] = records[i].x * records[i].y;
  }
  const double sxx = SortedSum(std::move(xx));
  const double sxy = SortedSum(std::move(xy));
  if (!(sxx > 0.0)) {
    return absl::InvalidArgumentError(
        "degenerate design: sum of x^2 is zero");
  }
  // exp(-gamma sum (y - x h)^2) = exp(-gamma sxx (h - sxy/sxx)^2) * const.
  ASSIGN_OR_RETURN(GaussianDist posterior,
                   GaussianDist::Create(sxy / sxx, 1.0 / (2.0 * gamma * sxx)));
  return posterior;
}

}  // namespace

absl::StatusOr<TableLoss> TableLoss::Create(
    std::vector<double> z_domain, std::vector<double> h_grid,
    const std::vector<std::vector<double>>& loss) {
  if (z_domain.empty() || h_grid.empty()) {
    return absl::InvalidArgumentError("loss table needs data and hypotheses");
  }
  if (loss.size() != z_domain.size()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "loss table has %d rows for %d data symbols", loss.size(),
        z_domain.size()));
  }
  std::vector<double> values;
  values.reserve(z_domain.size() * h_grid.size());
  for (const auto& row : loss) {
    if (row.size() != h_grid.size()) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "loss row has %d entries for %d hypotheses", row.size(),
          h_grid.size()));
    }
    for (double v : row) {
      if (!std::isfinite(v)) {
        return absl::InvalidArgumentError("loss entries must be finite");
      }
      values.push_back(v);
    }
  }
  return TableLoss(std::move(z_domain), std::move(h_grid), std::move(values));
}

absl::StatusOr<Mechanism> Mechanism::Create(
    LossModel loss, double gamma, std::optional<std::vector<double>> prior) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("dispersion gamma must be positive, got %g", gamma));
  }
  if (prior.has_value()) {
    const auto* table = std::get_if<TableLoss>(&loss);
    if (table == nullptr) {
      return absl::InvalidArgumentError(
          "a prior is only supported for TableLoss mechanisms");
    }
    if (prior->size() != table->num_hypotheses()) {
      return absl::InvalidArgumentError("prior length must match the grid");
    }
    for (double r : *prior) {
      if (!std::isfinite(r)) {
        return absl::InvalidArgumentError("prior entries must be finite");
      }
    }
  }
  return Mechanism(std::move(loss), gamma, std::move(prior));
}

absl::StatusOr<Mechanism> Mechanism::WithGamma(double gamma) const {
  return Create(loss_, gamma, prior_);
}

Dataset Dataset::Summary(double z) {
  return Dataset(Records(std::vector<double>{z}));
}

absl::StatusOr<Dataset> Dataset::Regression(
    std::vector<RegressionRecord> records) {
  if (records.empty()) return absl::InvalidArgumentError("empty dataset");
  return Dataset(Records(std::move(records)));
}

absl::StatusOr<Dataset> Dataset::Symbols(std::vector<std::size_t> symbols) {
  if (symbols.empty()) return absl::InvalidArgumentError("empty dataset");
  return Dataset(Records(std::move(symbols)));
}

std::size_t Dataset::size() const {
  return std::visit([](const auto& r) { return r.size(); }, records_);
}

absl::StatusOr<Dataset> Replace(const Dataset& data,
                                std::span<const std::size_t> indices,
                                const Dataset& fresh) {
  if (data.records().index() != fresh.records().index()) {
    return absl::InvalidArgumentError("fresh records are of a different kind");
  }
  if (indices.size() != fresh.size()) {
    return absl::InvalidArgumentError(
        absl::StrFormat("%d indices but %d fresh records", indices.size(),
                        fresh.size()));
  }
  std::vector<bool> used(data.size(), false);
  for (std::size_t i : indices) {
    if (i >= data.size()) {
      return absl::OutOfRangeError(absl::StrFormat(
          "replacement index %d outside dataset of size %d", i, data.size()));
    }
    if (used[i]) {
      return absl::InvalidArgumentError(
          absl::StrFormat("duplicate replacement index %d", i));
    }
    used[i] = true;
  }
  Dataset::Records records = data.records();
  std::visit(
      [&](auto& values) {
        using Vec = std::decay_t<decltype(values)>;
        const auto& replacement = std::get<Vec>(fresh.records());
        for (std::size_t j = 0; j < indices.size(); ++j) {
          values[indices[j]] = replacement[j];
        }
      },
      records);
  return Dataset(std::move(records));
}

absl::StatusOr<std::size_t> HammingDistance(const Dataset& a,
                                            const Dataset& b) {
  if (a.records().index() != b.records().index() || a.size() != b.size()) {
    return absl::InvalidArgumentError("datasets are not comparable");
  }
  return std::visit(
      [&](const auto& ra) -> std::size_t {
        const auto& rb = std::get<std::decay_t<decltype(ra)>>(b.records());
        std::size_t d = 0;
        for (std::size_t i = 0; i < ra.size(); ++i) d += !(ra[i] == rb[i]);
        return d;
      },
      a.records());
}

std::vector<double> TableTotals(const TableLoss& table,
                                std::span<const std::size_t> symbols) {
  std::vector<std::size_t> sorted(symbols.begin(), symbols.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> totals(table.num_hypotheses(), 0.0);
  for (std::size_t z : sorted) {
    const auto row = table.row(z);
    for (std::size_t h = 0; h < totals.size(); ++h) totals[h] += row[h];
  }
  return totals;
}

absl::StatusOr<DiscreteDist> TablePosterior(const Mechanism& mech,
                                            std::span<const double> totals) {
  const TableLoss* table = mech.table();
  if (table == nullptr) {
    return absl::InvalidArgumentError("not a TableLoss mechanism");
  }
  if (totals.size() != table->num_hypotheses()) {
    return absl::InvalidArgumentError("totals do not match the grid");
  }
  std::vector<double> log_weights(totals.size());
  for (std::size_t h = 0; h < totals.size(); ++h) {
    log_weights[h] = -mech.gamma() * totals[h] - mech.prior_at(h);
  }
  return DiscreteDist::FromLogWeights(table->h_grid(), log_weights);
}

absl::StatusOr<OutputDistribution> Posterior(const Mechanism& mech,
                                             const Dataset& data) {
  const auto& records = data.records();
  if (std::holds_alternative<AbsoluteLoss>(mech.loss())) {
    const auto* summaries = std::get_if<std::vector<double>>(&records);
    if (summaries == nullptr || summaries->size() != 1) {
      return absl::InvalidArgumentError(
          "absolute structural loss takes a single scalar summary");
    }
    ASSIGN_OR_RETURN(LaplaceDist posterior,
                     LaplaceDist::Create((*summaries)[0], 1.0 / mech.gamma()));
    return posterior;
  }
  if (std::holds_alternative<SquaredRegressionLoss>(mech.loss())) {
    const auto* pairs = std::get_if<std::vector<RegressionRecord>>(&records);
    if (pairs == nullptr) {
      return absl::InvalidArgumentError("regression loss takes (x, y) records");
    }
    return RegressionPosterior(mech.gamma(), *pairs);
  }
  const TableLoss& table = *mech.table();
  const auto* symbols = std::get_if<std::vector<std::size_t>>(&records);
  if (symbols == nullptr) {
    return absl::InvalidArgumentError("table loss takes symbol records");
  }
  for (std::size_t z : *symbols) {
    if (z >= table.num_symbols()) {
      return absl::OutOfRangeError(
          absl::StrFormat("symbol %d outside data domain of size %d", z,
                          table.num_symbols()));
    }
  }
  ASSIGN_OR_RETURN(DiscreteDist posterior,
                   TablePosterior(mech, TableTotals(table, *symbols)));
  return posterior;
}

double SquaredLossBound(const RegressionDomain& domain) {
  double bound = 0.0;
  for (double x : {domain.x.lo, domain.x.hi}) {
    for (double y : {domain.y.lo, domain.y.hi}) {
      for (double h : {domain.h.lo, domain.h.hi}) {
        const double r = y - x * h;
        bound = std::max(bound, r * r);
      }
    }
  }
  return bound;
}

absl::StatusOr<double> DpEpsilon(const Mechanism& mech,
                                 const DataDomain& domain,
                                 ExecutionPolicy policy) {
  if (std::holds_alternative<AbsoluteLoss>(mech.loss())) {
    const auto* box = std::get_if<SummaryDomain>(&domain);
    if (box == nullptr) {
      return absl::InvalidArgumentError(
          "absolute loss needs a bounded summary range");
    }
    const double width = box->summary.hi - box->summary.lo;
    if (!(width >= 0.0) || !std::isfinite(width)) {
      return absl::InvalidArgumentError("invalid summary range");
    }
    // Laplace mechanism with sensitivity `width` and scale 1/gamma.
    return mech.gamma() * width;
  }
  if (std::holds_alternative<SquaredRegressionLoss>(mech.loss())) {
    const auto* boxes = std::get_if<RegressionDomain>(&domain);
    if (boxes == nullptr) {
      return absl::InvalidArgumentError(
          "regression loss needs bounded x, y and hypothesis boxes");
    }
    return 4.0 * SquaredLossBound(*boxes) * mech.gamma();
  }
  const auto* finite = std::get_if<FiniteDomain>(&domain);
  if (finite == nullptr) {
    return absl::InvalidArgumentError("table loss needs a FiniteDomain");
  }
  const auto symbols = static_cast<std::int64_t>(mech.table()->num_symbols());
  const std::int64_t datasets =
      CappedPower(symbols, finite->n, finite->enumeration_cap);
  if (datasets > finite->enumeration_cap ||
      datasets * finite->n * (symbols - 1) > finite->enumeration_cap) {
    return absl::ResourceExhaustedError(
        "adjacent dataset pairs exceed the enumeration cap");
  }
  ASSIGN_OR_RETURN(DatasetEnumeration all,
                   DatasetEnumeration::Build(mech, finite->n, {},
                                             finite->enumeration_cap, policy));
  const auto worst = MapIndices(all.count(), policy, [&](std::int64_t z) {
    double best = 0.0;
    for (int i = 0; i < all.n(); ++i) {
      for (std::size_t s = 0; s < all.num_symbols(); ++s) {
        if (s == all.SymbolAt(z, i)) continue;
        const std::int64_t neighbour = all.ReplaceAt(z, i, s);
        best = std::max(best, *MaxDivergence(all.posterior(z),
                                             all.posterior(neighbour)));
      }
    }
    return best;
  });
  return std::max(0.0, OrderedMax(worst));
}

}  // namespace onavg
