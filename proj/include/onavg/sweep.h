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

// Gamma sweeps of the two continuous experiments and of a discrete table
// instance, the lemma-suite report and the information-bound table. All
// outputs are deterministic in the configuration and independent of the
// number of threads.

#ifndef ONAVG_SWEEP_H_
#define ONAVG_SWEEP_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "onavg/estimators.h"
#include "onavg/lemma_suite.h"
#include "onavg/parallel.h"

namespace onavg {

enum class Experiment { kMean, kRegression, kDiscrete };

absl::StatusOr<Experiment> ParseExperiment(absl::string_view name);
absl::string_view ExperimentName(Experiment experiment);

// Geometric grid; a single point is `min`.
struct GammaGrid {
  double min = 1e-2;
  double max = 1e2;
  int points = 20;
};

absl::StatusOr<std::vector<double>> GammaValues(const GammaGrid& grid);

struct SweepConfig {
  Experiment experiment = Experiment::kMean;
  GammaGrid grid;
  std::int64_t reps = 20000;
  std::int64_t mc_samples = 1000;
  std::uint64_t seed = 0;
  // Records per dataset; defaults to 20 for regression and 3 for discrete.
  std::optional<int> n;
  RiskMode risk_mode = RiskMode::kAnalytic;
  ExecutionPolicy policy = ExecutionPolicy::kParallel;
  // Empty: no file is written.
  std::string output_path;
};

absl::Status ValidateSweepConfig(const SweepConfig& cfg);

// Applies `key = value` lines ('#' starts a comment) to `cfg`. Keys are the
// long flag names of the sweep command with dashes or underscores.
absl::Status ApplyConfigText(absl::string_view text, SweepConfig& cfg);
absl::Status ApplyConfigFile(const std::string& path, SweepConfig& cfg);

struct SweepRow {
  double gamma = 0.0;
  double eps_dp = 0.0;
  double eps_onavg_kl = 0.0;
  double eps_onavg_kl_stderr = 0.0;
  double gen_error = 0.0;
  double gen_stderr = 0.0;
  double gen_scaled = 0.0;
  double excess_risk = 0.0;
  double excess_risk_stderr = 0.0;
};

inline constexpr absl::string_view kSweepCsvHeader =
    "gamma,eps_dp,eps_onavg_kl,eps_onavg_kl_stderr,gen_error,gen_stderr,"
    "gen_scaled,excess_risk,excess_risk_stderr";

// Rows in ascending gamma. Every grid point reuses cfg.seed, so rows share
// their common random numbers. Writes the CSV when output_path is set.
absl::StatusOr<std::vector<SweepRow>> RunSweep(const SweepConfig& cfg);

// %.12g, with infinities as "inf" / "-inf".
std::string FormatNumber(double value);
std::string SweepCsv(const std::vector<SweepRow>& rows);

absl::Status WriteTextFile(const std::string& path, absl::string_view contents);

// Prints one report line per check (and its detail when `verbose`). Returns
// whether every check passed.
absl::StatusOr<bool> RunVerify(const SuiteOptions& options, std::ostream& out,
                               bool verbose = false);

enum class MiInstance { kDefault, kDataIndependent };

absl::StatusOr<MiInstance> ParseMiInstance(absl::string_view name);

struct MiBoundsConfig {
  GammaGrid grid{0.1, 10.0, 10};
  MiInstance instance = MiInstance::kDefault;
  // Adds a row at gamma = 1/sigma when sigma > 0.
  bool include_inverse_sigma = true;
  std::int64_t enumeration_cap = kDefaultEnumerationCap;
  std::string output_path;
};

struct MiBoundsRow {
  double gamma = 0.0;
  double mi = 0.0;
  double indep_kl = 0.0;
  double maxinfo_over_n = 0.0;
  // Generalization gap of the structural loss, n times the per-record one.
  double gen = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double on_avg_kl = 0.0;
  double subexp_upper = 0.0;
  bool inverse_sigma = false;
};

inline constexpr absl::string_view kMiBoundsCsvHeader =
    "gamma,mi,indep_kl,maxinfo_over_n,gen,lower,upper,on_avg_kl,subexp_upper,"
    "inv_sigma_row";

absl::StatusOr<std::vector<MiBoundsRow>> RunMiBounds(const MiBoundsConfig& cfg);
std::string MiBoundsCsv(const std::vector<MiBoundsRow>& rows);

}  // namespace onavg

#endif  // ONAVG_SWEEP_H_
