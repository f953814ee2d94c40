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

#include <cmath>
#include <limits>
#include <vector>

#include "gtest/gtest.h"
#include "onavg/random.h"
#include "kl_quadrature.h"
#include "test_util.h"

namespace onavg {
namespace {

using ::onavg::testing::QuadratureKl;

constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(LaplaceDistTest, RejectsBadScale) {
  EXPECT_FALSE(LaplaceDist::Create(0.0, 0.0).ok());
  EXPECT_FALSE(LaplaceDist::Create(0.0, -1.0).ok());
  EXPECT_FALSE(LaplaceDist::Create(kInf, 1.0).ok());
  EXPECT_TRUE(LaplaceDist::Create(1.0, 0.5).ok());
}

TEST(GaussianDistTest, RejectsBadVariance) {
  EXPECT_FALSE(GaussianDist::Create(0.0, 0.0).ok());
  EXPECT_FALSE(GaussianDist::Create(std::nan(""), 1.0).ok());
  EXPECT_DOUBLE_EQ(GaussianDist::Create(0.0, 4.0)->stddev(), 2.0);
}

TEST(DiscreteDistTest, ValidatesProbabilities) {
  EXPECT_FALSE(DiscreteDist::Create({0, 1}, {0.5, 0.6}).ok());
  EXPECT_FALSE(DiscreteDist::Create({0, 1}, {1.2, -0.2}).ok());
  EXPECT_FALSE(DiscreteDist::Create({0, 1}, {1.0}).ok());
  EXPECT_TRUE(DiscreteDist::Create({0, 1}, {0.25, 0.75}).ok());
  const std::vector<double> bad = {0.0, std::nan("")};
  EXPECT_FALSE(DiscreteDist::FromLogWeights({0, 1}, bad).ok());
}

TEST(DiscreteDistTest, FromLogWeightsNormalizes) {
  const std::vector<double> logw = {1000.0, 1000.0 + std::log(3.0)};
  auto d = DiscreteDist::FromLogWeights({0, 1}, logw);
  ONAVG_ASSERT_OK(d);
  // 1000 + log 3 is only representable to ~1e-13.
  EXPECT_NEAR(d->probs()[0], 0.25, 1e-12);
  EXPECT_NEAR(d->probs()[1], 0.75, 1e-12);
  EXPECT_NEAR(d->log_probs()[0], std::log(0.25), 1e-12);
}

TEST(KlDivergenceTest, LaplaceSameScaleClosedForm) {
  // KL(Lap(0, 1) || Lap(d, 1)) = d + exp(-d) - 1.
  for (double d : {0.0, 1e-9, 1e-3, 0.5, 3.0, 40.0}) {
    const double kl = KlDivergence(*LaplaceDist::Create(0.0, 1.0),
                                   *LaplaceDist::Create(d, 1.0));
    EXPECT_NEAR(kl, d + std::exp(-d) - 1.0, 1e-15 + 1e-14 * d) << d;
    EXPECT_GE(kl, 0.0);
  }
  // Small shifts keep relative accuracy: d^2/2 to leading order.
  const double tiny = KlDivergence(*LaplaceDist::Create(0.0, 1.0),
                                   *LaplaceDist::Create(1e-6, 1.0));
  EXPECT_NEAR(tiny / 5e-13, 1.0, 1e-5);
}

TEST(KlDivergenceTest, GaussianKnownValue) {
  // KL(N(0,1) || N(1,2)) = 0.5 (log 2 + 2/2 - 1) = 0.5 log 2 + 0.0 ... plus
  // the mean term 1/(2*2).
  const double kl = KlDivergence(*GaussianDist::Create(0.0, 1.0),
                                 *GaussianDist::Create(1.0, 2.0));
  EXPECT_NEAR(kl, 0.5 * (std::log(2.0) + 0.5 + 0.5 - 1.0), 1e-15);
}

TEST(KlDivergenceTest, LaplaceMatchesQuadrature) {
  Rng rng(20261016);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double mp = -3.0 + 6.0 * Uniform01(rng);
    const double mq = -3.0 + 6.0 * Uniform01(rng);
    const double bp = std::exp(std::log(0.1) + std::log(100.0) * Uniform01(rng));
    const double bq = std::exp(std::log(0.1) + std::log(100.0) * Uniform01(rng));
    const LaplaceDist p = *LaplaceDist::Create(mp, bp);
    const LaplaceDist q = *LaplaceDist::Create(mq, bq);
    const double oracle =
        QuadratureKl(p, q, mp - 60.0 * bp, mp + 60.0 * bp, {mp, mq});
    worst = std::max(worst, std::abs(KlDivergence(p, q) - oracle));
  }
  EXPECT_LE(worst, 1e-8);
}

TEST(KlDivergenceTest, GaussianMatchesQuadrature) {
  Rng rng(7);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double mp = -3.0 + 6.0 * Uniform01(rng);
    const double mq = -3.0 + 6.0 * Uniform01(rng);
    const double vp = std::exp(std::log(0.01) + std::log(1e4) * Uniform01(rng));
    const double vq = std::exp(std::log(0.01) + std::log(1e4) * Uniform01(rng));
    const GaussianDist p = *GaussianDist::Create(mp, vp);
    const GaussianDist q = *GaussianDist::Create(mq, vq);
    const double sp = std::sqrt(vp);
    const double oracle = QuadratureKl(p, q, mp - 40.0 * sp, mp + 40.0 * sp,
                                       {mp, mp - 4 * sp, mp + 4 * sp, mq});
    worst = std::max(worst, std::abs(KlDivergence(p, q) - oracle));
  }
  EXPECT_LE(worst, 1e-8);
}

TEST(KlDivergenceTest, DiscreteEdgeCases) {
  const DiscreteDist p = *DiscreteDist::Create({0, 1, 2}, {0.5, 0.5, 0.0});
  const DiscreteDist q = *DiscreteDist::Create({0, 1, 2}, {0.5, 0.0, 0.5});
  EXPECT_EQ(*KlDivergence(p, q), kInf);
  // Atoms outside the support of p contribute nothing.
  EXPECT_NEAR(*KlDivergence(q, *DiscreteDist::Create({0, 1, 2},
                                                     {0.25, 0.25, 0.5})),
              0.5 * std::log(2.0), 1e-15);
  EXPECT_EQ(*KlDivergence(p, p), 0.0);
  EXPECT_FALSE(KlDivergence(p, DiscreteDist::PointMass(0.0)).ok());
}

TEST(KlDivergenceTest, VariantMixedFamiliesRejected) {
  const OutputDistribution a = *LaplaceDist::Create(0, 1);
  const OutputDistribution b = *GaussianDist::Create(0, 1);
  EXPECT_FALSE(KlDivergence(a, b).ok());
}

TEST(KlMonteCarloTest, CoversClosedForm) {
  const OutputDistribution p = *LaplaceDist::Create(0.0, 1.0);
  const OutputDistribution q = *LaplaceDist::Create(0.7, 1.5);
  Rng rng(3);
  auto est = KlMonteCarlo(p, q, 200000, rng);
  ONAVG_ASSERT_OK(est);
  const double exact = *KlDivergence(p, q);
  EXPECT_NEAR(est->value, exact, 4.0 * est->std_error);
  EXPECT_FALSE(KlMonteCarlo(p, q, 1, rng).ok());
}

TEST(MaxDivergenceTest, LaplaceAndDiscrete) {
  const OutputDistribution a = *LaplaceDist::Create(0.0, 0.5);
  const OutputDistribution b = *LaplaceDist::Create(1.5, 0.5);
  EXPECT_DOUBLE_EQ(*MaxDivergence(a, b), 3.0);
  const DiscreteDist p = *DiscreteDist::Create({0, 1}, {0.2, 0.8});
  const DiscreteDist q = *DiscreteDist::Create({0, 1}, {0.4, 0.6});
  EXPECT_NEAR(*MaxDivergence(p, q), std::log(0.8 / 0.6), 1e-15);
  const DiscreteDist r = *DiscreteDist::Create({0, 1}, {1.0, 0.0});
  EXPECT_EQ(*MaxDivergence(p, r), kInf);
  EXPECT_GE(*MaxDivergence(p, q), *KlDivergence(p, q));
}

TEST(EntropyTest, UniformAndPointMass) {
  EXPECT_NEAR(Entropy(*DiscreteDist::Create({0, 1, 2, 3},
                                            {0.25, 0.25, 0.25, 0.25})),
              std::log(4.0), 1e-15);
  EXPECT_EQ(Entropy(DiscreteDist::PointMass(3.0)), 0.0);
}

TEST(PartitionTest, Validation) {
  EXPECT_FALSE(Partition::Create({{0, 1}, {}}, 2).ok());
  EXPECT_FALSE(Partition::Create({{0, 1}, {1}}, 2).ok());
  EXPECT_FALSE(Partition::Create({{0}}, 2).ok());
  EXPECT_FALSE(Partition::Create({{0, 2}}, 2).ok());
  EXPECT_TRUE(Partition::Create({{1}, {0}}, 2).ok());
}

TEST(CoarsenTest, SumsBlocksAndNeverIncreasesKl) {
  const DiscreteDist p =
      *DiscreteDist::Create({0, 1, 2, 3}, {0.1, 0.2, 0.3, 0.4});
  const DiscreteDist q =
      *DiscreteDist::Create({0, 1, 2, 3}, {0.4, 0.3, 0.2, 0.1});
  const Partition part = *Partition::Create({{0, 3}, {1, 2}}, 4);
  const DiscreteDist cp = *Coarsen(p, part);
  EXPECT_NEAR(cp.probs()[0], 0.5, 1e-15);
  EXPECT_NEAR(cp.probs()[1], 0.5, 1e-15);
  EXPECT_LE(*KlDivergence(cp, *Coarsen(q, part)), *KlDivergence(p, q));
  EXPECT_EQ(*KlDivergence(*Coarsen(p, Partition::SingleBlock(4)),
                          *Coarsen(q, Partition::SingleBlock(4))),
            0.0);
  EXPECT_FALSE(Coarsen(p, Partition::Identity(3)).ok());
}

TEST(SampleTest, LaplaceMoments) {
  const LaplaceDist d = *LaplaceDist::Create(1.0, 2.0);
  Rng rng(11);
  constexpr int kDraws = 400000;
  double sum = 0.0;
  double abs_dev = 0.0;
  for (int i = 0; i < kDraws; ++i) {
    const double x = Sample(d, rng);
    sum += x;
    abs_dev += std::abs(x - 1.0);
  }
  // sd of the mean is sqrt(8 / kDraws); of |X - mu| is 2 / sqrt(kDraws).
  EXPECT_NEAR(sum / kDraws, 1.0, 5.0 * std::sqrt(8.0 / kDraws));
  EXPECT_NEAR(abs_dev / kDraws, 2.0, 5.0 * 2.0 / std::sqrt(kDraws));
}

TEST(SampleTest, DiscreteFrequencies) {
  const DiscreteDist d = *DiscreteDist::Create({5, 6, 7}, {0.2, 0.0, 0.8});
  Rng rng(5);
  int counts[3] = {0, 0, 0};
  constexpr int kDraws = 100000;
  for (int i = 0; i < kDraws; ++i) ++counts[Sample(d, rng)];
  EXPECT_EQ(counts[1], 0);
  EXPECT_NEAR(counts[0] / double{kDraws}, 0.2, 5.0 * std::sqrt(0.16 / kDraws));
}

TEST(DensityTest, VariantDispatch) {
  const OutputDistribution lap = *LaplaceDist::Create(0.0, 1.0);
  EXPECT_NEAR(*Density(lap, Outcome{0.0}), 0.5, 1e-15);
  EXPECT_FALSE(Density(lap, Outcome{std::size_t{0}}).ok());
  const OutputDistribution disc = *DiscreteDist::Create({3, 4}, {0.3, 0.7});
  EXPECT_NEAR(*Density(disc, Outcome{std::size_t{1}}), 0.7, 1e-15);
  EXPECT_DOUBLE_EQ(HypothesisValue(disc, Outcome{std::size_t{1}}), 4.0);
  EXPECT_FALSE(Mass(std::get<DiscreteDist>(disc), 2).ok());
}

}  // namespace
}  // namespace onavg
