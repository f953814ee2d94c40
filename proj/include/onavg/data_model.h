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

#ifndef ONAVG_DATA_MODEL_H_
#define ONAVG_DATA_MODEL_H_

#include <cstddef>
#include <variant>
#include <vector>

#include "absl/status/status.h"
#include "onavg/mechanisms.h"
#include "onavg/random.h"

namespace onavg {

// Scalar summary: the mean of `inner_n` standard normal draws truncated to
// `bounds`. Datasets have a single record.
struct TruncatedNormalMean {
  int inner_n = 100;
  Interval bounds{-2.0, 2.0};
};

// Scalar summary drawn from a finite distribution; a point mass is a single
// value. Datasets have a single record.
struct DiscreteSummary {
  std::vector<double> values;
  std::vector<double> pmf;
};

// n records with x ~ U[-1, 1], noise ~ U[-1, 1] and y = x * true_h + noise.
struct UniformRegression {
  int n = 20;
  double true_h = 1.0;
};

// n i.i.d. symbols of a TableLoss data domain.
struct DiscreteIid {
  std::vector<double> pmf;
  int n = 1;
};

using DataModel = std::variant<TruncatedNormalMean, DiscreteSummary,
                               UniformRegression, DiscreteIid>;

absl::Status ValidateModel(const DataModel& model);

// Number of records per dataset.
int DatasetSize(const DataModel& model);

Dataset SampleDataset(const DataModel& model, Rng& rng);
// `count` fresh i.i.d. records of the model's record kind.
Dataset SampleRecords(const DataModel& model, int count, Rng& rng);

// First four cumulants of a real random variable.
struct Cumulants {
  double mean = 0.0;
  double variance = 0.0;
  double kappa3 = 0.0;
  double kappa4 = 0.0;
};

// Cumulants of one standard normal draw truncated to `bounds`.
Cumulants TruncatedNormalCumulants(Interval bounds);
// Cumulants of the summary (mean of inner_n independent truncated draws).
Cumulants SummaryCumulants(const TruncatedNormalMean& model);

double SampleTruncatedNormal(Interval bounds, Rng& rng);
double SampleSummary(const TruncatedNormalMean& model, Rng& rng);

// E|X - h| for X with the given cumulants, from the Edgeworth expansion of
// the density of X through the fourth cumulant. For the summary of 100
// truncated draws the neglected terms are O(1/inner_n^2).
double EdgeworthAbsoluteMoment(const Cumulants& cumulants, double h);

// Population risk R(h) of the absolute loss under the summary distribution.
double SummaryRisk(const TruncatedNormalMean& model, double h);
// argmin_h R(h), the median of the summary distribution.
double SummaryRiskMinimizer(const TruncatedNormalMean& model);

double DiscreteSummaryRisk(const DiscreteSummary& model, double h);

// E (y - x h)^2 under UniformRegression.
double RegressionRisk(const UniformRegression& model, double h);

}  // namespace onavg

#endif  // ONAVG_DATA_MODEL_H_
