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
#include <fstream>
#include <sstream>
#include <utility>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_replace.h"
#include "absl/strings/str_split.h"
#include "onavg/status_macros.h"

namespace onavg {
namespace {

constexpr int kDefaultRegressionN = 20;
constexpr int kDefaultDiscreteN = 3;

struct Setup {
  Mechanism mech;
  DataModel model;
  DataDomain domain;
};

absl::StatusOr<Setup> BuildSetup(const SweepConfig& cfg, double gamma) {
  switch (cfg.experiment) {
    case Experiment::kMean: {
      ASSIGN_OR_RETURN(Mechanism mech, Mechanism::Create(AbsoluteLoss{}, gamma));
      return Setup{std::move(mech), TruncatedNormalMean{},
                   kMeanExperimentDomain};
    }
    case Experiment::kRegression: {
      ASSIGN_OR_RETURN(Mechanism mech,
                       Mechanism::Create(SquaredRegressionLoss{}, gamma));
      return Setup{std::move(mech),
                   UniformRegression{cfg.n.value_or(kDefaultRegressionN), 1.0},
                   kRegressionExperimentDomain};
    }
    case Experiment::kDiscrete: {
      DiscreteInstance inst = DefaultDiscreteInstance(gamma);
      inst.model.n = cfg.n.value_or(kDefaultDiscreteN);
      FiniteDomain domain;
      domain.n = inst.model.n;
      return Setup{std::move(inst.mech), std::move(inst.model), domain};
    }
  }
  return absl::InvalidArgumentError("unknown experiment");
}

absl::Status SetKey(absl::string_view key, absl::string_view value,
                    SweepConfig& cfg) {
  const std::string k = absl::StrReplaceAll(key, {{"_", "-"}});
  auto parse_double = [&](double& out) {
    if (!absl::SimpleAtod(value, &out)) {
      return absl::InvalidArgumentError(
          absl::StrCat("bad number for ", key, ": ", value));
    }
    return absl::OkStatus();
  };
  auto parse_int = [&](auto& out) {
    if (!absl::SimpleAtoi(value, &out)) {
      return absl::InvalidArgumentError(
          absl::StrCat("bad integer for ", key, ": ", value));
    }
    return absl::OkStatus();
  };
  if (k == "experiment") {
    ASSIGN_OR_RETURN(cfg.experiment, ParseExperiment(value));
    return absl::OkStatus();
  }
  if (k == "gamma-min") return parse_double(cfg.grid.min);
  if (k == "gamma-max") return parse_double(cfg.grid.max);
  if (k == "points") return parse_int(cfg.grid.points);
  if (k == "reps") return parse_int(cfg.reps);
  if (k == "mc-samples") return parse_int(cfg.mc_samples);
  if (k == "seed") return parse_int(cfg.seed);
  if (k == "n") {
    int n = 0;
    RETURN_IF_ERROR(parse_int(n));
    cfg.n = n;
    return absl::OkStatus();
  }
  if (k == "out") {
    cfg.output_path = std::string(value);
    return absl::OkStatus();
  }
  if (k == "risk") {
    if (value == "analytic") {
      cfg.risk_mode = RiskMode::kAnalytic;
    } else if (value == "ghost") {
      cfg.risk_mode = RiskMode::kGhostSample;
    } else {
      return absl::InvalidArgumentError(absl::StrCat("unknown risk: ", value));
    }
    return absl::OkStatus();
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown config key: ", key));
}

}  // namespace

absl::StatusOr<Experiment> ParseExperiment(absl::string_view name) {
  if (name == "mean") return Experiment::kMean;
  if (name == "regression") return Experiment::kRegression;
  if (name == "discrete") return Experiment::kDiscrete;
  return absl::InvalidArgumentError(absl::StrCat("unknown experiment: ", name));
}

absl::string_view ExperimentName(Experiment experiment) {
  switch (experiment) {
    case Experiment::kMean:
      return "mean";
    case Experiment::kRegression:
      return "regression";
    case Experiment::kDiscrete:
      return "discrete";
  }
  return "unknown";
}

absl::StatusOr<std::vector<double>> GammaValues(const GammaGrid& grid) {
  if (!(grid.min > 0.0) || !(grid.max >= grid.min) || !std::isfinite(grid.max)) {
    return absl::InvalidArgumentError("gamma grid needs 0 < min <= max");
  }
  if (grid.points < 1) {
    return absl::InvalidArgumentError("gamma grid needs at least one point");
  }
  std::vector<double> values(static_cast<std::size_t>(grid.points));
  if (grid.points == 1) {
    values[0] = grid.min;
    return values;
  }
  const double log_min = std::log(grid.min);
  const double step = (std::log(grid.max) - log_min) / (grid.points - 1);
  for (int i = 0; i < grid.points; ++i) {
    values[static_cast<std::size_t>(i)] = std::exp(log_min + step * i);
  }
  // Pin the ends so that the endpoints are reproduced exactly.
  values.front() = grid.min;
  values.back() = grid.max;
  return values;
}

absl::Status ValidateSweepConfig(const SweepConfig& cfg) {
  RETURN_IF_ERROR(GammaValues(cfg.grid).status());
  if (cfg.reps < 2) return absl::InvalidArgumentError("reps must be >= 2");
  if (cfg.mc_samples < 1) {
    return absl::InvalidArgumentError("mc-samples must be >= 1");
  }
  if (cfg.n.has_value()) {
    if (*cfg.n < 1) return absl::InvalidArgumentError("n must be >= 1");
    if (cfg.experiment == Experiment::kMean) {
      return absl::InvalidArgumentError(
          "n does not apply to the mean experiment");
    }
  }
  return absl::OkStatus();
}

absl::Status ApplyConfigText(absl::string_view text, SweepConfig& cfg) {
  int line_no = 0;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_no;
    line = line.substr(0, line.find('#'));
    line = absl::StripAsciiWhitespace(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == absl::string_view::npos) {
      return absl::InvalidArgumentError(
          absl::StrCat("config line ", line_no, ": expected key = value"));
    }
    const auto key = absl::StripAsciiWhitespace(line.substr(0, eq));
    const auto value = absl::StripAsciiWhitespace(line.substr(eq + 1));
    absl::Status status = SetKey(key, value, cfg);
    if (!status.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("config line ", line_no, ": ", status.message()));
    }
  }
  return absl::OkStatus();
}

absl::Status ApplyConfigFile(const std::string& path, SweepConfig& cfg) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot read ", path));
  std::ostringstream text;
  text << in.rdbuf();
  return ApplyConfigText(text.str(), cfg);
}

absl::StatusOr<std::vector<SweepRow>> RunSweep(const SweepConfig& cfg) {
  RETURN_IF_ERROR(ValidateSweepConfig(cfg));
  ASSIGN_OR_RETURN(std::vector<double> gammas, GammaValues(cfg.grid));
  EstimatorConfig est;
  est.reps = cfg.reps;
  est.mc_samples = cfg.mc_samples;
  est.seed = cfg.seed;
  est.policy = cfg.policy;
  est.risk_mode = cfg.risk_mode;

  std::vector<SweepRow> rows;
  rows.reserve(gammas.size());
  for (double gamma : gammas) {
    ASSIGN_OR_RETURN(Setup setup, BuildSetup(cfg, gamma));
    ASSIGN_OR_RETURN(double eps_dp,
                     DpEpsilon(setup.mech, setup.domain, cfg.policy));
    ASSIGN_OR_RETURN(EstimateReport kl, OnAvgKl(setup.mech, setup.model, 1, est));
    ASSIGN_OR_RETURN(EstimateReport gen,
                     OnAvgGeneralization(setup.mech, setup.model, est));
    ASSIGN_OR_RETURN(EstimateReport excess,
                     ExcessRisk(setup.mech, setup.model, est));
    SweepRow row;
    row.gamma = gamma;
    row.eps_dp = eps_dp;
    row.eps_onavg_kl = kl.value;
    row.eps_onavg_kl_stderr = kl.std_error;
    row.gen_error = gen.value;
    row.gen_stderr = gen.std_error;
    row.gen_scaled = gamma * gen.value;
    row.excess_risk = excess.value;
    row.excess_risk_stderr = excess.std_error;
    rows.push_back(row);
  }
  if (!cfg.output_path.empty()) {
    RETURN_IF_ERROR(WriteTextFile(cfg.output_path, SweepCsv(rows)));
  }
  return rows;
}

std::string FormatNumber(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  // Avoid a "-0" cell.
  if (value == 0.0) value = 0.0;
  return absl::StrFormat("%.12g", value);
}

std::string SweepCsv(const std::vector<SweepRow>& rows) {
  std::string csv = absl::StrCat(kSweepCsvHeader, "\n");
  for (const SweepRow& r : rows) {
    absl::StrAppend(&csv, FormatNumber(r.gamma), ",", FormatNumber(r.eps_dp),
                    ",", FormatNumber(r.eps_onavg_kl), ",",
                    FormatNumber(r.eps_onavg_kl_stderr), ",",
                    FormatNumber(r.gen_error), ",", FormatNumber(r.gen_stderr),
                    ",", FormatNumber(r.gen_scaled), ",",
                    FormatNumber(r.excess_risk), ",",
                    FormatNumber(r.excess_risk_stderr), "\n");
  }
  return csv;
}

absl::Status WriteTextFile(const std::string& path, absl::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return absl::UnavailableError(absl::StrCat("cannot open ", path));
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.close();
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", path));
  return absl::OkStatus();
}

absl::StatusOr<bool> RunVerify(const SuiteOptions& options, std::ostream& out,
                               bool verbose) {
  ASSIGN_OR_RETURN(std::vector<CheckResult> results, RunLemmaSuite(options));
  bool all_pass = true;
  for (const CheckResult& r : results) {
    out << FormatReportLine(r) << "\n";
    if (verbose && !r.detail.empty()) out << "  " << r.detail << "\n";
    all_pass &= r.pass;
  }
  return all_pass;
}

absl::StatusOr<MiInstance> ParseMiInstance(absl::string_view name) {
  if (name == "default") return MiInstance::kDefault;
  if (name == "independent") return MiInstance::kDataIndependent;
  return absl::InvalidArgumentError(absl::StrCat("unknown instance: ", name));
}

absl::StatusOr<std::vector<MiBoundsRow>> RunMiBounds(
    const MiBoundsConfig& cfg) {
  ASSIGN_OR_RETURN(std::vector<double> grid, GammaValues(cfg.grid));
  auto instance = [&](double gamma) {
    return cfg.instance == MiInstance::kDefault
               ? DefaultDiscreteInstance(gamma)
               : DataIndependentInstance(gamma);
  };
  // sigma depends on the losses only.
  const DiscreteInstance base = instance(1.0);
  ASSIGN_OR_RETURN(double sigma, SubgaussianSigma(base.mech, base.model));
  std::vector<std::pair<double, bool>> gammas;
  for (double g : grid) gammas.emplace_back(g, false);
  if (cfg.include_inverse_sigma && sigma > 0.0) {
    gammas.emplace_back(1.0 / sigma, true);
    std::stable_sort(gammas.begin(), gammas.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
  }

  EstimatorConfig est;
  est.enumeration_cap = cfg.enumeration_cap;
  std::vector<MiBoundsRow> rows;
  for (const auto& [gamma, flagged] : gammas) {
    const DiscreteInstance inst = instance(gamma);
    const auto& mech = inst.mech;
    const auto& model = inst.model;
    const std::int64_t cap = cfg.enumeration_cap;
    MiBoundsRow row;
    row.gamma = gamma;
    row.inverse_sigma = flagged;
    ASSIGN_OR_RETURN(row.mi, MutualInformationExact(mech, model, cap));
    ASSIGN_OR_RETURN(row.indep_kl, IndependentPairKlExact(mech, model, cap));
    ASSIGN_OR_RETURN(double max_info, MaxInformationExact(mech, model, cap));
    row.maxinfo_over_n = max_info / model.n;
    ASSIGN_OR_RETURN(EstimateReport gen, OnAvgGeneralization(mech, model, est));
    if (!gen.exact) {
      return absl::ResourceExhaustedError("instance exceeds the enumeration cap");
    }
    row.gen = model.n * gen.value;
    row.lower = row.mi / gamma;
    row.upper = sigma * std::sqrt(2.0 * row.mi);
    ASSIGN_OR_RETURN(EstimateReport kl, OnAvgKl(mech, model, 1, est));
    row.on_avg_kl = kl.value;
    row.subexp_upper = sigma > 0.0 ? sigma * row.mi + sigma / 2.0 : 0.0;
    rows.push_back(row);
  }
  if (!cfg.output_path.empty()) {
    RETURN_IF_ERROR(WriteTextFile(cfg.output_path, MiBoundsCsv(rows)));
  }
  return rows;
}

std::string MiBoundsCsv(const std::vector<MiBoundsRow>& rows) {
  std::string csv = absl::StrCat(kMiBoundsCsvHeader, "\n");
  for (const MiBoundsRow& r : rows) {
    absl::StrAppend(&csv, FormatNumber(r.gamma), ",", FormatNumber(r.mi), ",",
                    FormatNumber(r.indep_kl), ",",
                    FormatNumber(r.maxinfo_over_n), ",", FormatNumber(r.gen),
                    ",", FormatNumber(r.lower), ",", FormatNumber(r.upper), ",",
                    FormatNumber(r.on_avg_kl), ",",
                    FormatNumber(r.subexp_upper), ",",
                    r.inverse_sigma ? 1 : 0, "\n");
  }
  return csv;
}

}  // namespace onavg
