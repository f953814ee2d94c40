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

// onavg_cli: gamma sweeps, the lemma-suite report and the information-bound
// table.
//
//   onavg_cli sweep --experiment mean --gamma-min 0.01 --gamma-max 100 \
//       --points 20 --reps 20000 --seed 1 --out mean.csv
//   onavg_cli verify --seed 7919
//   onavg_cli mi-bounds --out mi.csv
//
// Exit status: 0 on success, 1 if a verification check fails, 2 on usage or
// I/O errors.

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "onavg/parallel.h"
#include "onavg/sweep.h"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

int Report(const absl::Status& status) {
  std::cerr << "onavg_cli: " << status << "\n";
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"On-average KL-privacy of posterior sampling"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads,
                 "OpenMP threads (0 keeps the runtime default)")
      ->check(CLI::NonNegativeNumber);

  // sweep
  CLI::App* sweep = app.add_subcommand("sweep", "gamma sweep to CSV");
  std::string config_path;
  std::string experiment;
  double gamma_min = 0.0;
  double gamma_max = 0.0;
  int points = 0;
  std::int64_t reps = 0;
  std::int64_t mc_samples = 0;
  std::uint64_t sweep_seed = 0;
  int n = 0;
  std::string risk;
  std::string sweep_out;
  sweep->add_option("--config", config_path, "key = value config file");
  CLI::Option* experiment_opt = sweep->add_option(
      "--experiment", experiment, "mean, regression or discrete");
  CLI::Option* gamma_min_opt = sweep->add_option("--gamma-min", gamma_min);
  CLI::Option* gamma_max_opt = sweep->add_option("--gamma-max", gamma_max);
  CLI::Option* points_opt = sweep->add_option("--points", points);
  CLI::Option* reps_opt = sweep->add_option("--reps", reps);
  CLI::Option* mc_opt = sweep->add_option("--mc-samples", mc_samples,
                                          "ghost records per replication");
  CLI::Option* seed_opt = sweep->add_option("--seed", sweep_seed);
  CLI::Option* n_opt =
      sweep->add_option("--n", n, "records per dataset (regression, discrete)");
  CLI::Option* risk_opt =
      sweep->add_option("--risk", risk, "analytic or ghost population risk");
  CLI::Option* out_opt = sweep->add_option("--out", sweep_out, "CSV path");

  // verify
  CLI::App* verify = app.add_subcommand("verify", "run the lemma suite");
  onavg::SuiteOptions suite;
  bool verbose = false;
  verify->add_option("--seed", suite.seed);
  verify->add_option("--mc-sigmas", suite.mc_sigmas,
                     "tolerance of Monte-Carlo checks in standard errors");
  verify->add_option("--mc-reps", suite.mc_reps)->check(CLI::Range(2, 1 << 30));
  verify->add_flag("--verbose", verbose, "print check details");

  // mi-bounds
  CLI::App* mi = app.add_subcommand("mi-bounds", "information bounds to CSV");
  onavg::MiBoundsConfig mi_cfg;
  std::string instance = "default";
  mi->add_option("--out", mi_cfg.output_path, "CSV path")->required();
  mi->add_option("--instance", instance, "default or independent");
  mi->add_option("--gamma-min", mi_cfg.grid.min);
  mi->add_option("--gamma-max", mi_cfg.grid.max);
  mi->add_option("--points", mi_cfg.grid.points);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  if (threads > 0) onavg::SetParallelThreads(threads);

  if (sweep->parsed()) {
    onavg::SweepConfig cfg;
    if (!config_path.empty()) {
      if (absl::Status s = onavg::ApplyConfigFile(config_path, cfg); !s.ok()) {
        return Report(s);
      }
    }
    // Command-line flags override the file.
    if (*experiment_opt) {
      auto parsed = onavg::ParseExperiment(experiment);
      if (!parsed.ok()) return Report(parsed.status());
      cfg.experiment = *parsed;
    }
    if (*gamma_min_opt) cfg.grid.min = gamma_min;
    if (*gamma_max_opt) cfg.grid.max = gamma_max;
    if (*points_opt) cfg.grid.points = points;
    if (*reps_opt) cfg.reps = reps;
    if (*mc_opt) cfg.mc_samples = mc_samples;
    if (*seed_opt) cfg.seed = sweep_seed;
    if (*n_opt) cfg.n = n;
    if (*risk_opt) {
      if (absl::Status s = onavg::ApplyConfigText("risk = " + risk, cfg);
          !s.ok()) {
        return Report(s);
      }
    }
    if (*out_opt) cfg.output_path = sweep_out;
    auto rows = onavg::RunSweep(cfg);
    if (!rows.ok()) return Report(rows.status());
    if (cfg.output_path.empty()) std::cout << onavg::SweepCsv(*rows);
    return 0;
  }

  if (verify->parsed()) {
    auto all_pass = onavg::RunVerify(suite, std::cout, verbose);
    if (!all_pass.ok()) return Report(all_pass.status());
    return *all_pass ? 0 : kExitFail;
  }

  auto parsed_instance = onavg::ParseMiInstance(instance);
  if (!parsed_instance.ok()) return Report(parsed_instance.status());
  mi_cfg.instance = *parsed_instance;
  auto rows = onavg::RunMiBounds(mi_cfg);
  if (!rows.ok()) return Report(rows.status());
  return 0;
}
