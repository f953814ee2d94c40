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

#include "onavg/sweep.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace onavg {
namespace {

using ::testing::HasSubstr;

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string TempPath(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

SweepConfig Small(Experiment experiment, double gamma) {
  SweepConfig cfg;
  cfg.experiment = experiment;
  cfg.grid = {gamma, gamma, 1};
  cfg.reps = 4000;
  cfg.seed = 5;
  return cfg;
}

TEST(GammaValuesTest, GeometricWithExactEnds) {
  auto g = GammaValues({0.01, 100.0, 5});
  ONAVG_ASSERT_OK(g);
  ASSERT_EQ(g->size(), 5u);
  EXPECT_EQ(g->front(), 0.01);
  EXPECT_EQ(g->back(), 100.0);
  for (std::size_t i = 1; i < 5; ++i) EXPECT_NEAR((*g)[i] / (*g)[i - 1], 10.0, 1e-12);
  EXPECT_EQ(*GammaValues({1.0, 1.0, 1}), std::vector<double>{1.0});
  EXPECT_EQ(*GammaValues({2.0, 3.0, 1}), std::vector<double>{2.0});
  EXPECT_FALSE(GammaValues({0.0, 1.0, 3}).ok());
  EXPECT_FALSE(GammaValues({2.0, 1.0, 3}).ok());
  EXPECT_FALSE(GammaValues({1.0, 2.0, 0}).ok());
}

TEST(FormatNumberTest, TwelveSignificantDigitsAndInf) {
  EXPECT_EQ(FormatNumber(4.0), "4");
  EXPECT_EQ(FormatNumber(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(FormatNumber(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(FormatNumber(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(FormatNumber(-0.0), "0");
  EXPECT_EQ(FormatNumber(1.5e-7), "1.5e-07");
}

TEST(RunSweepTest, MeanDpConstant) {
  auto rows = RunSweep(Small(Experiment::kMean, 1.0));
  ONAVG_ASSERT_OK(rows);
  ASSERT_EQ(rows->size(), 1u);
  EXPECT_EQ((*rows)[0].eps_dp, 4.0);
}

TEST(RunSweepTest, RegressionDpConstant) {
  auto rows = RunSweep(Small(Experiment::kRegression, 0.5));
  ONAVG_ASSERT_OK(rows);
  EXPECT_EQ((*rows)[0].eps_dp, 32.0);
}

TEST(RunSweepTest, RowsSatisfyEquivalenceAndDominance) {
  for (Experiment e : {Experiment::kMean, Experiment::kRegression,
                       Experiment::kDiscrete}) {
    SweepConfig cfg = Small(e, 0.1);
    cfg.grid = {0.1, 10.0, 3};
    auto rows = RunSweep(cfg);
    ONAVG_ASSERT_OK(rows);
    ASSERT_EQ(rows->size(), 3u);
    for (const SweepRow& r : *rows) {
      EXPECT_NEAR(r.eps_onavg_kl, r.gen_scaled,
                  3 * (r.eps_onavg_kl_stderr + r.gamma * r.gen_stderr) + 1e-10)
          << ExperimentName(e) << " gamma=" << r.gamma;
      EXPECT_LE(r.eps_onavg_kl, r.eps_dp);
      EXPECT_GE(r.eps_onavg_kl, 0.0);
      EXPECT_EQ(r.gen_scaled, r.gamma * r.gen_error);
    }
    EXPECT_LT((*rows)[0].gamma, (*rows)[1].gamma);
  }
}

TEST(RunSweepTest, DiscreteIsExact) {
  auto rows = RunSweep(Small(Experiment::kDiscrete, 2.0));
  ONAVG_ASSERT_OK(rows);
  EXPECT_EQ((*rows)[0].eps_onavg_kl_stderr, 0.0);
  EXPECT_EQ((*rows)[0].gen_stderr, 0.0);
  const DiscreteInstance inst = DefaultDiscreteInstance(2.0);
  EXPECT_EQ((*rows)[0].eps_dp, *DpEpsilon(inst.mech, FiniteDomain{3}));
}

TEST(RunSweepTest, CsvBytesDeterministic) {
  SweepConfig cfg = Small(Experiment::kRegression, 0.1);
  cfg.grid = {0.1, 1.0, 2};
  cfg.output_path = TempPath("onavg_sweep_a.csv");
  ONAVG_ASSERT_OK(RunSweep(cfg));
  const std::string first = ReadFile(cfg.output_path);
  const int saved = ParallelThreads();
  SetParallelThreads(3);
  cfg.output_path = TempPath("onavg_sweep_b.csv");
  ONAVG_ASSERT_OK(RunSweep(cfg));
  SetParallelThreads(saved);
  EXPECT_EQ(first, ReadFile(cfg.output_path));
  cfg.policy = ExecutionPolicy::kSerial;
  cfg.output_path = "";
  EXPECT_EQ(first, SweepCsv(*RunSweep(cfg)));

  const std::vector<std::string> lines = absl::StrSplit(first, '\n');
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0], kSweepCsvHeader);
  EXPECT_EQ(lines[3], "");
  const std::vector<std::string> cells = absl::StrSplit(lines[1], ',');
  EXPECT_EQ(cells.size(), 9u);
}

TEST(RunSweepTest, Errors) {
  SweepConfig cfg = Small(Experiment::kMean, 1.0);
  cfg.reps = 1;
  EXPECT_FALSE(RunSweep(cfg).ok());
  cfg = Small(Experiment::kMean, 1.0);
  cfg.n = 5;
  EXPECT_FALSE(RunSweep(cfg).ok());
  cfg = Small(Experiment::kMean, 1.0);
  cfg.output_path = "/nonexistent-dir/out.csv";
  EXPECT_FALSE(RunSweep(cfg).ok());
}

TEST(SweepCsvTest, InfinityCells) {
  SweepRow row;
  row.gamma = 1.0;
  row.eps_dp = std::numeric_limits<double>::infinity();
  EXPECT_EQ(SweepCsv({row}),
            absl::StrCat(kSweepCsvHeader, "\n1,inf,0,0,0,0,0,0,0\n"));
}

TEST(ConfigTest, ParsesKeysCommentsAndErrors) {
  SweepConfig cfg;
  ONAVG_ASSERT_OK(ApplyConfigText(
      "# sweep\nexperiment = regression\ngamma_min=0.5\n gamma-max = 2 # hi\n"
      "points=4\nreps=100\nseed=9\nn=7\nmc-samples=3\nrisk=ghost\nout=x.csv\n",
      cfg));
  EXPECT_EQ(cfg.experiment, Experiment::kRegression);
  EXPECT_EQ(cfg.grid.min, 0.5);
  EXPECT_EQ(cfg.grid.max, 2.0);
  EXPECT_EQ(cfg.grid.points, 4);
  EXPECT_EQ(cfg.reps, 100);
  EXPECT_EQ(cfg.seed, 9u);
  EXPECT_EQ(cfg.n, 7);
  EXPECT_EQ(cfg.mc_samples, 3);
  EXPECT_EQ(cfg.risk_mode, RiskMode::kGhostSample);
  EXPECT_EQ(cfg.output_path, "x.csv");
  EXPECT_FALSE(ApplyConfigText("bogus = 1", cfg).ok());
  EXPECT_FALSE(ApplyConfigText("points", cfg).ok());
  EXPECT_FALSE(ApplyConfigText("points = many", cfg).ok());
  EXPECT_FALSE(ApplyConfigText("experiment = cubic", cfg).ok());
  EXPECT_FALSE(ApplyConfigFile("/nonexistent/cfg.txt", cfg).ok());
}

TEST(RunVerifyTest, PrintsOneLinePerCheck) {
  std::ostringstream out;
  SuiteOptions options;
  options.mc_reps = 4000;
  auto pass = RunVerify(options, out);
  ONAVG_ASSERT_OK(pass);
  EXPECT_TRUE(*pass);
  const std::vector<std::string> lines =
      absl::StrSplit(out.str(), '\n', absl::SkipEmpty());
  EXPECT_EQ(lines.size(), 14u);
  for (const auto& line : lines) EXPECT_THAT(line, HasSubstr(" PASS"));

  options.mc_sigmas = 0.0;
  std::ostringstream failed;
  EXPECT_FALSE(*RunVerify(options, failed));
  EXPECT_THAT(failed.str(), HasSubstr("kl_gen.mc.mean"));
  EXPECT_THAT(failed.str(), HasSubstr(" FAIL"));
}

TEST(MiBoundsTest, DefaultRowsSatisfyBounds) {
  MiBoundsConfig cfg;
  auto rows = RunMiBounds(cfg);
  ONAVG_ASSERT_OK(rows);
  ASSERT_EQ(rows->size(), 11u);
  int flagged = 0;
  for (const MiBoundsRow& r : *rows) {
    EXPECT_LE(r.lower, r.gen + 1e-10) << r.gamma;
    EXPECT_LE(r.gen, r.upper + 1e-10) << r.gamma;
    EXPECT_LE(r.gen, r.subexp_upper + 1e-10) << r.gamma;
    EXPECT_LE(r.mi, r.indep_kl + 1e-10) << r.gamma;
    EXPECT_LE(r.on_avg_kl, r.maxinfo_over_n + 1e-10) << r.gamma;
    flagged += r.inverse_sigma;
  }
  EXPECT_EQ(flagged, 1);
  const std::string csv = MiBoundsCsv(*rows);
  EXPECT_EQ(csv.substr(0, kMiBoundsCsvHeader.size()), kMiBoundsCsvHeader);
}

TEST(MiBoundsTest, DataIndependentRowsVanish) {
  MiBoundsConfig cfg;
  cfg.instance = MiInstance::kDataIndependent;
  auto rows = RunMiBounds(cfg);
  ONAVG_ASSERT_OK(rows);
  ASSERT_EQ(rows->size(), 10u);
  for (const MiBoundsRow& r : *rows) {
    for (double v : {r.mi, r.indep_kl, r.maxinfo_over_n, r.gen, r.lower,
                     r.upper, r.on_avg_kl, r.subexp_upper}) {
      EXPECT_NEAR(v, 0.0, 1e-12);
    }
  }
  EXPECT_FALSE(ParseMiInstance("other").ok());
}

}  // namespace
}  // namespace onavg
