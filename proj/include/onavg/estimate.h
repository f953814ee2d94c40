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

#ifndef ONAVG_ESTIMATE_H_
#define ONAVG_ESTIMATE_H_

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>

namespace onavg {

// Point estimate of an expectation. Monte-Carlo reports carry the replication
// count and std_error = sd / sqrt(reps); exact reports carry the number of
// enumerated weighted terms and std_error = 0.
struct EstimateReport {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t reps = 0;
  bool exact = false;

  bool is_infinite() const { return std::isinf(value); }
};

// Mean and standard error of per-replication values, reduced in index order.
// An infinite replication makes the whole report infinite.
inline EstimateReport SummarizeReplications(std::span<const double> values) {
  EstimateReport report;
  report.reps = static_cast<std::int64_t>(values.size());
  if (values.empty()) return report;
  double sum = 0.0;
  for (double v : values) {
    if (std::isinf(v)) {
      report.value = std::numeric_limits<double>::infinity();
      report.std_error = std::numeric_limits<double>::infinity();
      return report;
    }
    sum += v;
  }
  const double n = static_cast<double>(values.size());
  const double mean = sum / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  report.value = mean;
  report.std_error =
      values.size() > 1 ? std::sqrt(ss / (n - 1.0)) / std::sqrt(n) : 0.0;
  return report;
}

inline EstimateReport ExactReport(double value, std::int64_t terms) {
  return EstimateReport{value, 0.0, terms, true};
}

}  // namespace onavg

#endif  // ONAVG_ESTIMATE_H_
