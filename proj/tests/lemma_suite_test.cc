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

#include "onavg/lemma_suite.h"

#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace onavg {
namespace {

using ::testing::HasSubstr;
using ::testing::StartsWith;

TEST(VerdictTest, RelationsAndFormat) {
  EXPECT_TRUE(Verdict("a", 1.0, 1.0 + 1e-11, Relation::kEqual, 1e-10).pass);
  EXPECT_FALSE(Verdict("a", 1.0, 1.1, Relation::kEqual, 1e-10).pass);
  EXPECT_TRUE(Verdict("b", 1.0, 0.99, Relation::kLessEqual, 0.02).pass);
  EXPECT_FALSE(Verdict("b", 1.0, 0.99, Relation::kLessEqual, 0.0).pass);
  EXPECT_FALSE(Verdict("c", std::nan(""), 0.0, Relation::kLessEqual, 1).pass);
  EXPECT_EQ(FormatReportLine(Verdict("x.y", 0.5, 0.25, Relation::kEqual, 0)),
            "x.y lhs=0.5 rhs=0.25 tol=0 FAIL");
  EXPECT_EQ(FormatReportLine(
                Verdict("z", 1.0 / 3.0, 1.0, Relation::kLessEqual, 1e-12)),
            "z lhs=0.333333333333 rhs=1 tol=1e-12 PASS");
}

TEST(InstanceTest, RandomInstancesRespectLimits) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto inst = RandomDiscreteInstance(seed);
    ONAVG_ASSERT_OK(inst);
    const TableLoss& t = *inst->mech.table();
    EXPECT_GE(t.num_symbols(), 2u);
    EXPECT_LE(t.num_symbols(), 3u);
    EXPECT_LE(t.num_hypotheses(), 6u);
    EXPECT_GE(inst->model.n, 1);
    EXPECT_LE(inst->model.n, 4);
    EXPECT_GE(inst->mech.gamma(), 0.1);
    EXPECT_LE(inst->mech.gamma(), 10.0);
  }
  auto a = RandomDiscreteInstance(9);
  auto b = RandomDiscreteInstance(9);
  EXPECT_EQ(a->model.pmf, b->model.pmf);
}

TEST(KlGenEquivalenceTest, ExactOnRandomInstances) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    auto inst = RandomDiscreteInstance(seed);
    ONAVG_ASSERT_OK(inst);
    auto r = CheckKlGenEquivalence(inst->mech, inst->model, EstimatorConfig{});
    ONAVG_ASSERT_OK(r);
    EXPECT_TRUE(r->pass) << FormatReportLine(*r);
    EXPECT_EQ(r->tolerance, kExactTolerance);
  }
}

TEST(KlGenEquivalenceTest, ZeroSigmasFailsMonteCarlo) {
  const Mechanism mech = *Mechanism::Create(AbsoluteLoss{}, 1.0);
  EstimatorConfig cfg;
  cfg.reps = 500;
  auto r = CheckKlGenEquivalence(mech, TruncatedNormalMean{}, cfg, 0.0);
  ONAVG_ASSERT_OK(r);
  EXPECT_FALSE(r->pass);
  auto ok = CheckKlGenEquivalence(mech, TruncatedNormalMean{}, cfg, 3.0);
  EXPECT_TRUE(ok->pass) << FormatReportLine(*ok);
}

TEST(KlGenEquivalenceTest, DegenerateInstancesFlagged) {
  DiscreteInstance inst = DefaultDiscreteInstance(1.0);
  inst.model.pmf = {1.0, 0.0};
  auto r = CheckKlGenEquivalence(inst.mech, inst.model, EstimatorConfig{});
  ONAVG_ASSERT_OK(r);
  EXPECT_TRUE(r->pass);
  EXPECT_EQ(r->lhs, 0.0);
  EXPECT_THAT(r->detail, HasSubstr("point-mass"));
  const DiscreteInstance flat = DataIndependentInstance(2.0);
  auto f = CheckKlGenEquivalence(flat.mech, flat.model, EstimatorConfig{});
  EXPECT_THAT(f->detail, HasSubstr("data-independent"));
}

TEST(PostprocessingTest, NoViolations) {
  const CheckResult r = CheckPostprocessing(500, 3);
  EXPECT_TRUE(r.pass) << r.detail;
  EXPECT_THAT(r.detail, HasSubstr("0 violations"));
}

TEST(GroupPrivacyTest, LinearInGroupSize) {
  InstanceShape shape;
  shape.n = 4;
  shape.num_symbols = 3;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto inst = MakeDiscreteInstance(seed, shape);
    ONAVG_ASSERT_OK(inst);
    auto r = CheckGroupPrivacy(inst->mech, inst->model, 4);
    ONAVG_ASSERT_OK(r);
    EXPECT_TRUE(r->pass) << FormatReportLine(*r);
  }
  auto inst = MakeDiscreteInstance(0, shape);
  EXPECT_FALSE(CheckGroupPrivacy(inst->mech, inst->model, 5).ok());
  EXPECT_FALSE(CheckGroupPrivacy(inst->mech, inst->model, 4, 100).ok());
}

TEST(CompositionTest, BoundAndChainRule) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto pair = RandomAdaptivePair(seed, 2);
    ONAVG_ASSERT_OK(pair);
    auto results = CheckComposition(*pair, DiscreteIid{{0.3, 0.7}, 3});
    ONAVG_ASSERT_OK(results);
    ASSERT_EQ(results->size(), 2u);
    for (const auto& r : *results) EXPECT_TRUE(r.pass) << FormatReportLine(r);
  }
}

TEST(CompositionTest, RejectsMismatchedStages) {
  auto pair = RandomAdaptivePair(1, 2);
  ONAVG_ASSERT_OK(pair);
  pair->second.pop_back();
  EXPECT_FALSE(CheckComposition(*pair, DiscreteIid{{0.5, 0.5}, 2}).ok());
}

TEST(MaxInfoTest, HoldsAcrossSeeds) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto inst = RandomDiscreteInstance(seed);
    ONAVG_ASSERT_OK(inst);
    auto r = CheckMaxInfo(inst->mech, inst->model);
    ONAVG_ASSERT_OK(r);
    EXPECT_TRUE(r->pass) << FormatReportLine(*r);
  }
}

TEST(MutualInfoTest, DefaultInstanceAcrossGammas) {
  for (double gamma : {0.1, 0.5, 1.0, 3.0, 10.0}) {
    const DiscreteInstance inst = DefaultDiscreteInstance(gamma);
    auto results = CheckMutualInfo(inst.mech, inst.model);
    ONAVG_ASSERT_OK(results);
    EXPECT_EQ(results->size(), 5u);
    for (const auto& r : *results) EXPECT_TRUE(r.pass) << FormatReportLine(r);
  }
}

TEST(MutualInfoTest, DataIndependentIsTrivial) {
  const DiscreteInstance inst = DataIndependentInstance(1.0);
  auto results = CheckMutualInfo(inst.mech, inst.model);
  ONAVG_ASSERT_OK(results);
  for (const auto& r : *results) {
    EXPECT_TRUE(r.pass) << FormatReportLine(r);
    EXPECT_NEAR(r.lhs, 0.0, 1e-15);
  }
}

TEST(MaxEntTest, GibbsMinimizesFreeEnergy) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto inst = RandomDiscreteInstance(seed);
    ONAVG_ASSERT_OK(inst);
    Rng rng(seed);
    const Dataset data = SampleDataset(inst->model, rng);
    auto r = CheckMaxEnt(inst->mech, data, 1000, seed);
    ONAVG_ASSERT_OK(r);
    EXPECT_TRUE(r->pass) << FormatReportLine(*r);
  }
}

TEST(RunLemmaSuiteTest, AllPassForSeveralSeeds) {
  for (std::uint64_t seed : {7919ull, 1ull, 2ull, 3ull}) {
    SuiteOptions options;
    options.seed = seed;
    options.mc_reps = 5000;
    auto results = RunLemmaSuite(options);
    ONAVG_ASSERT_OK(results);
    EXPECT_EQ(results->size(), 14u);
    for (const auto& r : *results) {
      EXPECT_TRUE(r.pass) << seed << ": " << FormatReportLine(r);
      EXPECT_THAT(FormatReportLine(r), StartsWith(r.name + " lhs="));
    }
  }
}

}  // namespace
}  // namespace onavg
