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

#ifndef ONAVG_EXACT_ENUMERATION_H_
#define ONAVG_EXACT_ENUMERATION_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "onavg/distributions.h"
#include "onavg/mechanisms.h"
#include "onavg/parallel.h"

namespace onavg {

// Saturating |base|^exponent; returns cap + 1 once the cap is exceeded.
std::int64_t CappedPower(std::int64_t base, int exponent, std::int64_t cap);

// Every dataset in z_domain^n for a TableLoss mechanism together with its
// Gibbs posterior and (optionally) its i.i.d. probability. Dataset `index`
// stores record i in base-|z_domain| digit i.
class DatasetEnumeration {
 public:
  // `pmf` may be empty when dataset weights are not needed.
  static absl::StatusOr<DatasetEnumeration> Build(
      const Mechanism& mech, int n, std::span<const double> pmf,
      std::int64_t cap, ExecutionPolicy policy);

  std::int64_t count() const { return count_; }
  int n() const { return n_; }
  std::size_t num_symbols() const { return num_symbols_; }
  const DiscreteDist& posterior(std::int64_t index) const {
    return posteriors_[static_cast<std::size_t>(index)];
  }
  double weight(std::int64_t index) const {
    return weights_[static_cast<std::size_t>(index)];
  }
  std::vector<std::size_t> Symbols(std::int64_t index) const;
  std::size_t SymbolAt(std::int64_t index, int position) const;
  // Index of the dataset whose records 0..k-1 are replaced by the k digits of
  // `fresh` (a base-|z_domain| number).
  std::int64_t ReplacePrefix(std::int64_t index, int k,
                             std::int64_t fresh) const;
  // Index of the dataset with record `position` set to `symbol`.
  std::int64_t ReplaceAt(std::int64_t index, int position,
                         std::size_t symbol) const;

 private:
  DatasetEnumeration() = default;
  int n_ = 0;
  std::size_t num_symbols_ = 0;
  std::int64_t count_ = 0;
  std::vector<std::int64_t> place_;
  std::vector<DiscreteDist> posteriors_;
  std::vector<double> weights_;
};

}  // namespace onavg

#endif  // ONAVG_EXACT_ENUMERATION_H_
