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

#include "onavg/data_model.h"

#include <cmath>
#include <numbers>
#include <random>

#include "absl/strings/str_format.h"

namespace onavg {
namespace {

constexpr double kPmfTolerance = 1e-12;

double NormalPdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double NormalCdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

absl::Status ValidatePmf(const std::vector<double>& pmf) {
  if (pmf.empty()) return absl::InvalidArgumentError("empty pmf");
  double total = 0.0;
  for (double p : pmf) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      return absl::InvalidArgumentError(absl::StrFormat("invalid mass %g", p));
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kPmfTolerance) {
    return absl::InvalidArgumentError(
        absl::StrFormat("pmf sums to %.17g", total));
  }
  return absl::OkStatus();
}

std::size_t SampleIndex(const std::vector<double>& pmf, Rng& rng) {
  const double u = Uniform01(rng);
  double cumulative = 0.0;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    cumulative += pmf[i];
    if (u < cumulative) return i;
  }
  for (std::size_t i = pmf.size(); i-- > 0;) {
    if (pmf[i] > 0.0) return i;
  }
  return pmf.size() - 1;
}

}  // namespace

absl::Status ValidateModel(const DataModel& model) {
  if (const auto* m = std::get_if<TruncatedNormalMean>(&model)) {
    if (m->inner_n < 1) return absl::InvalidArgumentError("inner_n must be >= 1");
    if (!(m->bounds.lo < m->bounds.hi)) {
      return absl::InvalidArgumentError("truncation bounds must be increasing");
    }
    // Sampling is by rejection from the untruncated normal.
    if (NormalCdf(m->bounds.hi) - NormalCdf(m->bounds.lo) < 1e-3) {
      return absl::InvalidArgumentError("truncation interval has tiny mass");
    }
    return absl::OkStatus();
  }
  if (const auto* m = std::get_if<DiscreteSummary>(&model)) {
    if (m->values.size() != m->pmf.size()) {
      return absl::InvalidArgumentError("values and pmf differ in length");
    }
    return ValidatePmf(m->pmf);
  }
  if (const auto* m = std::get_if<UniformRegression>(&model)) {
    if (m->n < 1) return absl::InvalidArgumentError("n must be >= 1");
    return absl::OkStatus();
  }
  const auto& m = std::get<DiscreteIid>(model);
  if (m.n < 1) return absl::InvalidArgumentError("n must be >= 1");
  return ValidatePmf(m.pmf);
}

int DatasetSize(const DataModel& model) {
  if (const auto* m = std::get_if<UniformRegression>(&model)) return m->n;
  if (const auto* m = std::get_if<DiscreteIid>(&model)) return m->n;
  return 1;
}

Dataset SampleRecords(const DataModel& model, int count, Rng& rng) {
  if (const auto* m = std::get_if<TruncatedNormalMean>(&model)) {
    return Dataset::Summary(SampleSummary(*m, rng));
  }
  if (const auto* m = std::get_if<DiscreteSummary>(&model)) {
    return Dataset::Summary(m->values[SampleIndex(m->pmf, rng)]);
  }
  if (const auto* m = std::get_if<UniformRegression>(&model)) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<RegressionRecord> records(static_cast<std::size_t>(count));
    for (auto& r : records) {
      r.x = unit(rng);
      r.y = r.x * m->true_h + unit(rng);
    }
    return *Dataset::Regression(std::move(records));
  }
  const auto& m = std::get<DiscreteIid>(model);
  std::vector<std::size_t> symbols(static_cast<std::size_t>(count));
  for (auto& z : symbols) z = SampleIndex(m.pmf, rng);
  return *Dataset::Symbols(std::move(symbols));
}

Dataset SampleDataset(const DataModel& model, Rng& rng) {
  return SampleRecords(model, DatasetSize(model), rng);
}

Cumulants TruncatedNormalCumulants(Interval bounds) {
  const double a = bounds.lo;
  const double b = bounds.hi;
  const double mass = NormalCdf(b) - NormalCdf(a);
  const double pa = NormalPdf(a);
  const double pb = NormalPdf(b);
  // Raw moments from E[X^k] = (k-1) E[X^(k-2)] + (a^(k-1) phi(a) -
  // b^(k-1) phi(b)) / mass.
  double raw[5];
  raw[0] = 1.0;
  raw[1] = (pa - pb) / mass;
  for (int k = 2; k <= 4; ++k) {
    raw[k] = (k - 1) * raw[k - 2] +
             (std::pow(a, k - 1) * pa - std::pow(b, k - 1) * pb) / mass;
  }
  const double mu = raw[1];
  Cumulants c;
  c.mean = mu;
  c.variance = raw[2] - mu * mu;
  c.kappa3 = raw[3] - 3.0 * mu * raw[2] + 2.0 * mu * mu * mu;
  const double central4 = raw[4] - 4.0 * mu * raw[3] + 6.0 * mu * mu * raw[2] -
                          3.0 * mu * mu * mu * mu;
  c.kappa4 = central4 - 3.0 * c.variance * c.variance;
  return c;
}

Cumulants SummaryCumulants(const TruncatedNormalMean& model) {
  const Cumulants one = TruncatedNormalCumulants(model.bounds);
  const double n = model.inner_n;
  return Cumulants{one.mean, one.variance / n, one.kappa3 / (n * n),
                   one.kappa4 / (n * n * n)};
}

double SampleTruncatedNormal(Interval bounds, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  while (true) {
    const double x = normal(rng);
    if (x >= bounds.lo && x <= bounds.hi) return x;
  }
}

double SampleSummary(const TruncatedNormalMean& model, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  double total = 0.0;
  for (int i = 0; i < model.inner_n;) {
    const double x = normal(rng);
    if (x >= model.bounds.lo && x <= model.bounds.hi) {
      total += x;
      ++i;
    }
  }
  return total / model.inner_n;
}

double EdgeworthAbsoluteMoment(const Cumulants& cumulants, double h) {
  const double s = std::sqrt(cumulants.variance);
  const double t = (h - cumulants.mean) / s;
  const double skew = cumulants.kappa3 / (s * s * s);
  const double kurt = cumulants.kappa4 / (s * s * s * s);
  const double pdf = NormalPdf(t);
  // Gaussian part: E|s U - s t| for standard normal U.
  const double base = s * (2.0 * pdf + t * (2.0 * NormalCdf(t) - 1.0));
  // Each Hermite term He_k of the density contributes 2 s He_{k-2}(t) phi(t).
  const double he1 = t;
  const double he2 = t * t - 1.0;
  const double he4 = t * t * t * t - 6.0 * t * t + 3.0;
  const double correction = skew / 6.0 * he1 + kurt / 24.0 * he2 +
                            skew * skew / 72.0 * he4;
  return base + 2.0 * s * pdf * correction;
}

double SummaryRisk(const TruncatedNormalMean& model, double h) {
  return EdgeworthAbsoluteMoment(SummaryCumulants(model), h);
}

double SummaryRiskMinimizer(const TruncatedNormalMean& model) {
  const Cumulants c = SummaryCumulants(model);
  if (c.kappa3 == 0.0) return c.mean;
  // R is convex; golden-section search around the mean.
  const double s = std::sqrt(c.variance);
  double lo = c.mean - 10.0 * s;
  double hi = c.mean + 10.0 * s;
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double x1 = hi - ratio * (hi - lo);
    const double x2 = lo + ratio * (hi - lo);
    if (EdgeworthAbsoluteMoment(c, x1) < EdgeworthAbsoluteMoment(c, x2)) {
      hi = x2;
    } else {
      lo = x1;
    }
  }
  return 0.5 * (lo + hi);
}

double DiscreteSummaryRisk(const DiscreteSummary& model, double h) {
  double risk = 0.0;
  for (std::size_t j = 0; j < model.values.size(); ++j) {
    risk += model.pmf[j] * std::abs(model.values[j] - h);
  }
  return risk;
}

double RegressionRisk(const UniformRegression& model, double h) {
  // x(true_h - h) + noise with E x^2 = E noise^2 = 1/3.
  const double gap = model.true_h - h;
  return (gap * gap + 1.0) / 3.0;
}

}  // namespace onavg
