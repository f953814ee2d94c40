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

#include "onavg/exact_enumeration.h"

#include <optional>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace onavg {

std::int64_t CappedPower(std::int64_t base, int exponent, std::int64_t cap) {
  std::int64_t result = 1;
  for (int i = 0; i < exponent; ++i) {
    if (base != 0 && result > cap / base) return cap + 1;
    result *= base;
  }
  return result;
}

absl::StatusOr<DatasetEnumeration> DatasetEnumeration::Build(
    const Mechanism& mech, int n, std::span<const double> pmf,
    std::int64_t cap, ExecutionPolicy policy) {
  const TableLoss* table = mech.table();
  if (table == nullptr) {
    return absl::InvalidArgumentError(
        "exact enumeration needs a TableLoss mechanism");
  }
  if (n < 1) return absl::InvalidArgumentError("dataset size must be >= 1");
  if (!pmf.empty() && pmf.size() != table->num_symbols()) {
    return absl::InvalidArgumentError(
        "pmf length does not match the loss table's data domain");
  }
  const auto base = static_cast<std::int64_t>(table->num_symbols());
  const std::int64_t count = CappedPower(base, n, cap);
  if (count > cap) {
    return absl::ResourceExhaustedError(absl::StrFormat(
        "%d^%d datasets exceed the enumeration cap of %d", base, n, cap));
  }

  DatasetEnumeration out;
  out.n_ = n;
  out.num_symbols_ = table->num_symbols();
  out.count_ = count;
  out.place_.resize(static_cast<std::size_t>(n));
  std::int64_t place = 1;
  for (int i = 0; i < n; ++i) {
    out.place_[static_cast<std::size_t>(i)] = place;
    place *= base;
  }

  std::vector<std::optional<DiscreteDist>> slots(
      static_cast<std::size_t>(count));
  std::vector<absl::Status> errors(static_cast<std::size_t>(count));
  ForEachIndex(count, policy, [&](std::int64_t index) {
    const auto symbols = out.Symbols(index);
    auto posterior = TablePosterior(mech, TableTotals(*table, symbols));
    if (posterior.ok()) {
      slots[static_cast<std::size_t>(index)] = *std::move(posterior);
    } else {
      errors[static_cast<std::size_t>(index)] = posterior.status();
    }
  });
  for (const auto& status : errors) {
    if (!status.ok()) return status;
  }
  out.posteriors_.reserve(slots.size());
  for (auto& slot : slots) out.posteriors_.push_back(*std::move(slot));

  if (!pmf.empty()) {
    out.weights_ = MapIndices(count, policy, [&](std::int64_t index) {
      double w = 1.0;
      for (int i = 0; i < n; ++i) w *= pmf[out.SymbolAt(index, i)];
      return w;
    });
  }
  return out;
}

std::size_t DatasetEnumeration::SymbolAt(std::int64_t index,
                                         int position) const {
  return static_cast<std::size_t>(
      (index / place_[static_cast<std::size_t>(position)]) %
      static_cast<std::int64_t>(num_symbols_));
}

std::vector<std::size_t> DatasetEnumeration::Symbols(
    std::int64_t index) const {
  std::vector<std::size_t> symbols(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    symbols[static_cast<std::size_t>(i)] = SymbolAt(index, i);
  }
  return symbols;
}

std::int64_t DatasetEnumeration::ReplacePrefix(std::int64_t index, int k,
                                               std::int64_t fresh) const {
  const std::int64_t prefix_span = k >= n_
                                       ? count_
                                       : place_[static_cast<std::size_t>(k)];
  return index - index % prefix_span + fresh;
}

std::int64_t DatasetEnumeration::ReplaceAt(std::int64_t index, int position,
                                           std::size_t symbol) const {
  const std::int64_t place = place_[static_cast<std::size_t>(position)];
  const auto current = static_cast<std::int64_t>(SymbolAt(index, position));
  return index + (static_cast<std::int64_t>(symbol) - current) * place;
}

}  // namespace onavg
