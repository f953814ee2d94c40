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

#ifndef ONAVG_TESTS_TEST_UTIL_H_
#define ONAVG_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "gtest/gtest.h"
#include "onavg/data_model.h"
#include "onavg/mechanisms.h"

#define ONAVG_EXPECT_OK(expr) \
  EXPECT_TRUE((expr).ok()) << ::onavg::testing::StatusOf(expr)
#define ONAVG_ASSERT_OK(expr) \
  ASSERT_TRUE((expr).ok()) << ::onavg::testing::StatusOf(expr)

namespace onavg::testing {

inline const absl::Status& StatusOf(const absl::Status& s) { return s; }
template <typename T>
const absl::Status& StatusOf(const absl::StatusOr<T>& s) {
  return s.status();
}

// Brute-force oracle for table mechanisms. It recomputes the Gibbs posterior
// from the loss table directly and walks every dataset with nested digit
// counters, sharing no code with the library enumeration.
class BruteForce {
 public:
  BruteForce(const Mechanism& mech, const DiscreteIid& model)
      : table_(*mech.table()),
        gamma_(mech.gamma()),
        prior_(mech.prior()),
        model_(model) {}

  std::size_t symbols() const { return table_.num_symbols(); }
  std::size_t hypotheses() const { return table_.num_hypotheses(); }

  std::vector<double> Posterior(const std::vector<std::size_t>& z) const {
    std::vector<double> logw(hypotheses());
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t h = 0; h < hypotheses(); ++h) {
      double s = 0.0;
      for (std::size_t zi : z) s += table_.loss(zi, h);
      logw[h] = -gamma_ * s - (prior_ ? (*prior_)[h] : 0.0);
      top = std::max(top, logw[h]);
    }
    double total = 0.0;
    for (double& v : logw) {
      v = std::exp(v - top);
      total += v;
    }
    for (double& v : logw) v /= total;
    return logw;
  }

  double Weight(const std::vector<std::size_t>& z) const {
    double w = 1.0;
    for (std::size_t zi : z) w *= model_.pmf[zi];
    return w;
  }

  // Calls fn(z) for every z in z_domain^len.
  template <typename Fn>
  void ForAll(int len, Fn&& fn) const {
    std::vector<std::size_t> z(static_cast<std::size_t>(len), 0);
    while (true) {
      fn(z);
      int i = 0;
      while (i < len && ++z[static_cast<std::size_t>(i)] == symbols()) {
        z[static_cast<std::size_t>(i)] = 0;
        ++i;
      }
      if (i == len) return;
    }
  }

  static double Kl(const std::vector<double>& p, const std::vector<double>& q) {
    double kl = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] > 0.0) kl += p[i] * std::log(p[i] / q[i]);
    }
    return kl;
  }

  double OnAvgKl(int k) const {
    const int n = model_.n;
    double total = 0.0;
    ForAll(n, [&](const std::vector<std::size_t>& z) {
      const double wz = Weight(z);
      const auto p = Posterior(z);
      ForAll(k, [&](const std::vector<std::size_t>& fresh) {
        auto zz = z;
        for (int i = 0; i < k; ++i) {
          zz[static_cast<std::size_t>(i)] = fresh[static_cast<std::size_t>(i)];
        }
        total += wz * Weight(fresh) * Kl(p, Posterior(zz));
      });
    });
    return total;
  }

  double Generalization() const {
    const int n = model_.n;
    std::vector<double> risk(hypotheses(), 0.0);
    for (std::size_t h = 0; h < hypotheses(); ++h) {
      for (std::size_t s = 0; s < symbols(); ++s) {
        risk[h] += model_.pmf[s] * table_.loss(s, h);
      }
    }
    double total = 0.0;
    ForAll(n, [&](const std::vector<std::size_t>& z) {
      const auto p = Posterior(z);
      double g = 0.0;
      for (std::size_t h = 0; h < hypotheses(); ++h) {
        double emp = 0.0;
        for (std::size_t zi : z) emp += table_.loss(zi, h);
        g += p[h] * (risk[h] - emp / n);
      }
      total += Weight(z) * g;
    });
    return total;
  }

  double MutualInformation() const {
    const int n = model_.n;
    std::vector<double> marginal(hypotheses(), 0.0);
    ForAll(n, [&](const std::vector<std::size_t>& z) {
      const auto p = Posterior(z);
      for (std::size_t h = 0; h < hypotheses(); ++h) {
        marginal[h] += Weight(z) * p[h];
      }
    });
    double mi = 0.0;
    ForAll(n, [&](const std::vector<std::size_t>& z) {
      mi += Weight(z) * Kl(Posterior(z), marginal);
    });
    return mi;
  }

 private:
  const TableLoss& table_;
  double gamma_;
  std::optional<std::vector<double>> prior_;
  DiscreteIid model_;
};

}  // namespace onavg::testing

#endif  // ONAVG_TESTS_TEST_UTIL_H_
