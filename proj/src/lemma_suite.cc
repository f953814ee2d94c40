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

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "onavg/exact_enumeration.h"
#include "onavg/random.h"
#include "onavg/status_macros.h"

namespace onavg {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string Num(double v) { return absl::StrFormat("%.12g", v); }

bool IsDegenerate(const DiscreteIid& model) {
  return std::count_if(model.pmf.begin(), model.pmf.end(),
                       [](double p) { return p > 0.0; }) <= 1;
}

bool IsDataIndependent(const Mechanism& mech) {
  const TableLoss* table = mech.table();
  if (table == nullptr) return false;
  for (std::size_t z = 1; z < table->num_symbols(); ++z) {
    if (!std::equal(table->row(z).begin(), table->row(z).end(),
                    table->row(0).begin())) {
      return false;
    }
  }
  return true;
}

std::string InstanceNote(const Mechanism& mech, const DiscreteIid& model) {
  std::string note;
  if (IsDegenerate(model)) note += " degenerate: point-mass data;";
  if (IsDataIndependent(mech)) note += " degenerate: data-independent losses;";
  return note;
}

std::vector<double> RandomSimplex(std::size_t size, double concentration,
                                  Rng& rng) {
  std::gamma_distribution<double> gamma(concentration, 1.0);
  std::vector<double> p(size);
  double total = 0.0;
  for (auto& v : p) {
    v = gamma(rng);
    total += v;
  }
  if (!(total > 0.0)) {
    std::fill(p.begin(), p.end(), 1.0 / static_cast<double>(size));
    return p;
  }
  for (auto& v : p) v /= total;
  return p;
}

// DiscreteDist from unnormalized positive weights via log-weights, which keeps
// the probabilities summing to one within rounding.
DiscreteDist FromWeights(const std::vector<double>& support,
                         const std::vector<double>& weights) {
  bool any_zero = false;
  std::vector<double> log_w(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    any_zero |= !(weights[i] > 0.0);
    log_w[i] = std::log(weights[i]);
  }
  if (!any_zero) return *DiscreteDist::FromLogWeights(support, log_w);
  double total = 0.0;
  for (double w : weights) total += w;
  std::vector<double> probs(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) probs[i] = weights[i] / total;
  return *DiscreteDist::Create(support, probs);
}

int UniformInt(int lo, int hi, Rng& rng) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

absl::Status RequireExact(const DiscreteIid& model, std::size_t symbols,
                          int extra, std::int64_t cap) {
  if (CappedPower(static_cast<std::int64_t>(symbols), model.n + extra, cap) >
      cap) {
    return absl::ResourceExhaustedError(
        "instance exceeds the exact enumeration cap");
  }
  return absl::OkStatus();
}

EstimatorConfig ExactConfig(std::int64_t cap) {
  EstimatorConfig cfg;
  cfg.enumeration_cap = cap;
  return cfg;
}

}  // namespace

CheckResult Verdict(std::string name, double lhs, double rhs,
                    Relation relation, double tolerance, std::string detail) {
  CheckResult r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.relation = relation;
  r.tolerance = tolerance;
  r.detail = std::move(detail);
  if (relation == Relation::kEqual) {
    r.pass = std::abs(lhs - rhs) <= tolerance;
  } else {
    r.pass = lhs <= rhs + tolerance;
  }
  return r;
}

std::string FormatReportLine(const CheckResult& result) {
  return absl::StrFormat("%s lhs=%s rhs=%s tol=%s %s", result.name,
                         Num(result.lhs), Num(result.rhs),
                         Num(result.tolerance),
                         result.pass ? "PASS" : "FAIL");
}

absl::StatusOr<DiscreteInstance> MakeDiscreteInstance(
    std::uint64_t seed, const InstanceShape& shape) {
  if (shape.num_symbols < 1 || shape.num_hypotheses < 1 || shape.n < 1) {
    return absl::InvalidArgumentError("instance dimensions must be positive");
  }
  Rng rng = MakeStream(seed, StreamTag::kInstance, 0);
  const auto symbols = static_cast<std::size_t>(shape.num_symbols);
  const auto hypotheses = static_cast<std::size_t>(shape.num_hypotheses);
  std::vector<double> z_domain(symbols);
  std::vector<double> h_grid(hypotheses);
  for (std::size_t z = 0; z < symbols; ++z) z_domain[z] = static_cast<double>(z);
  for (std::size_t h = 0; h < hypotheses; ++h) {
    h_grid[h] = hypotheses == 1 ? 0.0
                                : static_cast<double>(h) /
                                      static_cast<double>(hypotheses - 1);
  }
  std::vector<std::vector<double>> loss(symbols, std::vector<double>(hypotheses));
  for (auto& row : loss) {
    for (auto& v : row) v = Uniform01(rng);
  }
  std::vector<double> pmf(symbols);
  double total = 0.0;
  for (auto& p : pmf) {
    p = 0.05 + Uniform01(rng);
    total += p;
  }
  for (auto& p : pmf) p /= total;
  std::optional<std::vector<double>> prior;
  if (shape.with_prior) {
    prior.emplace(hypotheses);
    for (auto& r : *prior) r = Uniform01(rng);
  }
  ASSIGN_OR_RETURN(TableLoss table, TableLoss::Create(z_domain, h_grid, loss));
  ASSIGN_OR_RETURN(Mechanism mech,
                   Mechanism::Create(std::move(table), shape.gamma, prior));
  return DiscreteInstance{std::move(mech), DiscreteIid{pmf, shape.n}};
}

absl::StatusOr<DiscreteInstance> RandomDiscreteInstance(
    std::uint64_t seed, const InstanceLimits& limits) {
  Rng rng = MakeStream(seed, StreamTag::kInstance, 1);
  InstanceShape shape;
  shape.num_symbols = UniformInt(2, limits.max_symbols, rng);
  shape.n = UniformInt(1, limits.max_n, rng);
  shape.num_hypotheses = UniformInt(2, limits.max_hypotheses, rng);
  const double log_lo = std::log(limits.gamma_min);
  const double log_hi = std::log(limits.gamma_max);
  shape.gamma = std::exp(log_lo + (log_hi - log_lo) * Uniform01(rng));
  shape.with_prior = (rng() & 1) != 0;
  return MakeDiscreteInstance(SplitMix64(seed), shape);
}

DiscreteInstance DefaultDiscreteInstance(double gamma) {
  InstanceShape shape;
  shape.gamma = gamma;
  return *MakeDiscreteInstance(1, shape);
}

DiscreteInstance DataIndependentInstance(double gamma) {
  const std::vector<double> row = {0.7, 0.1, 0.4, 0.9, 0.3};
  TableLoss table = *TableLoss::Create({0.0, 1.0}, {0.0, 0.25, 0.5, 0.75, 1.0},
                                       {row, row});
  return DiscreteInstance{*Mechanism::Create(std::move(table), gamma),
                          DiscreteIid{{0.4, 0.6}, 3}};
}

absl::StatusOr<AdaptivePair> RandomAdaptivePair(std::uint64_t seed,
                                                int num_symbols) {
  Rng rng = MakeStream(seed, StreamTag::kInstance, 2);
  const int first_grid = UniformInt(2, 4, rng);
  auto random_mechanism = [&](int grid) -> absl::StatusOr<Mechanism> {
    InstanceShape shape;
    shape.num_symbols = num_symbols;
    shape.num_hypotheses = grid;
    shape.gamma = std::exp(std::log(0.3) + std::log(30.0) * Uniform01(rng));
    shape.with_prior = (rng() & 1) != 0;
    ASSIGN_OR_RETURN(DiscreteInstance inst, MakeDiscreteInstance(rng(), shape));
    return inst.mech;
  };
  ASSIGN_OR_RETURN(Mechanism first, random_mechanism(first_grid));
  const int second_grid = UniformInt(2, 4, rng);
  std::vector<Mechanism> second;
  for (int h = 0; h < first_grid; ++h) {
    ASSIGN_OR_RETURN(Mechanism m, random_mechanism(second_grid));
    second.push_back(std::move(m));
  }
  return AdaptivePair{std::move(first), std::move(second)};
}

absl::StatusOr<CheckResult> CheckKlGenEquivalence(const Mechanism& mech,
                                          const DataModel& model,
                                          const EstimatorConfig& cfg,
                                          double mc_sigmas) {
  ASSIGN_OR_RETURN(EstimateReport kl, OnAvgKl(mech, model, 1, cfg));
  ASSIGN_OR_RETURN(EstimateReport gen, OnAvgGeneralization(mech, model, cfg));
  const double gamma = mech.gamma();
  const bool exact = kl.exact && gen.exact;
  const double combined = std::hypot(kl.std_error, gamma * gen.std_error);
  const double tolerance = exact ? kExactTolerance : mc_sigmas * combined;
  std::string detail = absl::StrCat(
      "on_avg_kl=", Num(kl.value), " +- ", Num(kl.std_error), "; gamma*gen=",
      Num(gamma * gen.value), " +- ", Num(gamma * gen.std_error),
      exact ? "; exact enumeration" : absl::StrCat("; ", kl.reps, " reps"));
  if (const auto* iid = std::get_if<DiscreteIid>(&model)) {
    detail += InstanceNote(mech, *iid);
  }
  return Verdict(exact ? "kl_gen.exact" : "kl_gen.mc", kl.value,
                 gamma * gen.value, Relation::kEqual, tolerance,
                 std::move(detail));
}

CheckResult CheckPostprocessing(int trials, std::uint64_t seed) {
  double worst = -kInf;
  int violations = 0;
  for (int t = 0; t < trials; ++t) {
    Rng rng = MakeStream(seed, StreamTag::kPostprocessing,
                         static_cast<std::uint64_t>(t));
    const auto size = static_cast<std::size_t>(UniformInt(2, 20, rng));
    const double concentration = std::exp(std::log(0.2) + std::log(25.0) *
                                                               Uniform01(rng));
    std::vector<double> support(size);
    for (std::size_t i = 0; i < size; ++i) support[i] = static_cast<double>(i);
    const DiscreteDist p =
        FromWeights(support, RandomSimplex(size, concentration, rng));
    const DiscreteDist q =
        FromWeights(support, RandomSimplex(size, concentration, rng));

    Partition partition = Partition::Identity(size);
    if (t % 5 == 1) {
      partition = Partition::SingleBlock(size);
    } else if (t % 5 != 0) {
      const int num_blocks = UniformInt(1, static_cast<int>(size), rng);
      std::vector<std::vector<std::size_t>> blocks(
          static_cast<std::size_t>(num_blocks));
      for (std::size_t i = 0; i < size; ++i) {
        blocks[static_cast<std::size_t>(UniformInt(0, num_blocks - 1, rng))]
            .push_back(i);
      }
      std::erase_if(blocks, [](const auto& b) { return b.empty(); });
      partition = *Partition::Create(std::move(blocks), size);
    }
    const double fine = *KlDivergence(p, q);
    const double coarse =
        *KlDivergence(*Coarsen(p, partition), *Coarsen(q, partition));
    const double excess = coarse - fine;
    worst = std::max(worst, excess);
    violations += excess > kPostprocessingTolerance;
  }
  return Verdict("postprocessing", worst, 0.0, Relation::kLessEqual,
                 kPostprocessingTolerance,
                 absl::StrCat(trials, " trials, ", violations, " violations"));
}

absl::StatusOr<CheckResult> CheckGroupPrivacy(const Mechanism& mech,
                                              const DiscreteIid& model,
                                              int k_max, std::int64_t cap) {
  if (k_max < 1 || k_max > model.n) {
    return absl::InvalidArgumentError("k_max must lie in [1, n]");
  }
  if (mech.table() == nullptr) {
    return absl::InvalidArgumentError("group check needs a TableLoss mechanism");
  }
  RETURN_IF_ERROR(RequireExact(model, mech.table()->num_symbols(), k_max, cap));
  const EstimatorConfig cfg = ExactConfig(cap);
  ASSIGN_OR_RETURN(EstimateReport single, OnAvgKl(mech, model, 1, cfg));
  double worst = 0.0;
  std::string detail = absl::StrCat("k=1:", Num(single.value));
  for (int k = 2; k <= k_max; ++k) {
    ASSIGN_OR_RETURN(EstimateReport group, OnAvgKl(mech, model, k, cfg));
    worst = std::max(worst, std::abs(group.value - k * single.value));
    absl::StrAppend(&detail, " k=", k, ":", Num(group.value));
  }
  detail += InstanceNote(mech, model);
  return Verdict("group_privacy", worst, 0.0, Relation::kLessEqual,
                 kExactTolerance, std::move(detail));
}

absl::StatusOr<std::vector<CheckResult>> CheckComposition(
    const AdaptivePair& pair, const DiscreteIid& model, std::int64_t cap) {
  const TableLoss* first_table = pair.first.table();
  if (first_table == nullptr ||
      pair.second.size() != first_table->num_hypotheses()) {
    return absl::InvalidArgumentError(
        "need one second-stage mechanism per first-stage hypothesis");
  }
  for (const auto& m : pair.second) {
    if (m.table() == nullptr ||
        m.table()->num_symbols() != first_table->num_symbols() ||
        m.table()->num_hypotheses() != pair.second[0].table()->num_hypotheses()) {
      return absl::InvalidArgumentError(
          "second-stage mechanisms must share the data domain and grid");
    }
  }
  RETURN_IF_ERROR(RequireExact(model, first_table->num_symbols(), 1, cap));
  const ExecutionPolicy policy = ExecutionPolicy::kParallel;
  ASSIGN_OR_RETURN(DatasetEnumeration first,
                   DatasetEnumeration::Build(pair.first, model.n, model.pmf,
                                             cap, policy));
  std::vector<DatasetEnumeration> second;
  for (const auto& m : pair.second) {
    ASSIGN_OR_RETURN(DatasetEnumeration e,
                     DatasetEnumeration::Build(m, model.n, model.pmf, cap,
                                               policy));
    second.push_back(std::move(e));
  }
  const std::size_t grid1 = first_table->num_hypotheses();
  const std::size_t grid2 = pair.second[0].table()->num_hypotheses();
  const std::size_t symbols = first_table->num_symbols();

  auto joint = [&](std::int64_t z) {
    std::vector<double> support(grid1 * grid2);
    std::vector<double> log_w(grid1 * grid2);
    for (std::size_t a = 0; a < grid1; ++a) {
      for (std::size_t b = 0; b < grid2; ++b) {
        support[a * grid2 + b] = static_cast<double>(a * grid2 + b);
        log_w[a * grid2 + b] = first.posterior(z).log_probs()[a] +
                               second[a].posterior(z).log_probs()[b];
      }
    }
    return *DiscreteDist::FromLogWeights(std::move(support), log_w);
  };

  std::vector<double> chain_gap(static_cast<std::size_t>(first.count()));
  std::vector<double> sup_second(static_cast<std::size_t>(first.count()));
  const auto joint_terms =
      MapIndices(first.count(), policy, [&](std::int64_t z) {
        const double w = first.weight(z);
        const DiscreteDist pz = joint(z);
        double total = 0.0;
        double worst_gap = 0.0;
        double sup_term = 0.0;
        for (std::size_t s = 0; s < symbols; ++s) {
          if (model.pmf[s] == 0.0) continue;
          const std::int64_t other = first.ReplaceAt(z, 0, s);
          const double kl_joint = *KlDivergence(pz, joint(other));
          const double kl_first =
              *KlDivergence(first.posterior(z), first.posterior(other));
          double kl_chain = kl_first;
          double best_second = 0.0;
          for (std::size_t a = 0; a < grid1; ++a) {
            const double kl_second = *KlDivergence(second[a].posterior(z),
                                                   second[a].posterior(other));
            kl_chain += first.posterior(z).probs()[a] * kl_second;
            best_second = std::max(best_second, kl_second);
          }
          worst_gap = std::max(worst_gap, std::abs(kl_joint - kl_chain));
          total += model.pmf[s] * kl_joint;
          sup_term += model.pmf[s] * best_second;
        }
        chain_gap[static_cast<std::size_t>(z)] = worst_gap;
        sup_second[static_cast<std::size_t>(z)] = w * sup_term;
        return w * total;
      });
  const double joint_kl = OrderedSum(joint_terms);
  const double chain_worst = OrderedMax(chain_gap);
  const double expected_sup = OrderedSum(sup_second);

  const EstimatorConfig cfg = ExactConfig(cap);
  ASSIGN_OR_RETURN(EstimateReport eps1, OnAvgKl(pair.first, model, 1, cfg));
  double eps2 = 0.0;
  for (const auto& m : pair.second) {
    ASSIGN_OR_RETURN(EstimateReport e, OnAvgKl(m, model, 1, cfg));
    eps2 = std::max(eps2, e.value);
  }
  std::vector<CheckResult> results;
  results.push_back(Verdict(
      "composition.bound", joint_kl, eps1.value + eps2, Relation::kLessEqual,
      kExactTolerance,
      absl::StrCat("eps1=", Num(eps1.value), " eps2(sup over h1)=", Num(eps2),
                   "; eps1 + E sup_h1 KL_B=", Num(eps1.value + expected_sup),
                   " (holds for every instance)")));
  results.push_back(Verdict("composition.chain_rule", chain_worst, 0.0,
                            Relation::kLessEqual, kExactTolerance,
                            "max over adjacent pairs of |KL(joint) - "
                            "KL(first) - E KL(second)|"));
  return results;
}

absl::StatusOr<CheckResult> CheckMaxInfo(const Mechanism& mech,
                                         const DiscreteIid& model,
                                         std::int64_t cap) {
  if (mech.table() == nullptr) {
    return absl::InvalidArgumentError("max-information needs a TableLoss");
  }
  RETURN_IF_ERROR(RequireExact(model, mech.table()->num_symbols(), 1, cap));
  ASSIGN_OR_RETURN(EstimateReport kl, OnAvgKl(mech, model, 1, ExactConfig(cap)));
  ASSIGN_OR_RETURN(double max_info, MaxInformationExact(mech, model, cap));
  return Verdict("maxinfo", kl.value, max_info / model.n, Relation::kLessEqual,
                 kExactTolerance,
                 absl::StrCat("I_inf=", Num(max_info), " n=", model.n,
                              InstanceNote(mech, model)));
}

absl::StatusOr<std::vector<CheckResult>> CheckMutualInfo(
    const Mechanism& mech, const DiscreteIid& model, std::int64_t cap) {
  if (mech.table() == nullptr) {
    return absl::InvalidArgumentError("mutual information needs a TableLoss");
  }
  RETURN_IF_ERROR(RequireExact(model, mech.table()->num_symbols(), 1, cap));
  ASSIGN_OR_RETURN(double mi, MutualInformationExact(mech, model, cap));
  ASSIGN_OR_RETURN(double pair_kl, IndependentPairKlExact(mech, model, cap));
  ASSIGN_OR_RETURN(double gap, JensenGapExact(mech, model, cap));
  ASSIGN_OR_RETURN(double sigma, SubgaussianSigma(mech, model));
  ASSIGN_OR_RETURN(EstimateReport gen,
                   OnAvgGeneralization(mech, model, ExactConfig(cap)));
  const double gamma = mech.gamma();
  // The bounds concern the structural loss sum_i loss(z_i, h), whose
  // generalization gap is n times the per-record one.
  const double structural = model.n * std::abs(gen.value);
  const double upper = sigma * std::sqrt(2.0 * mi);
  // (sigma, b) = (r/2, r/2) certifies subexponential tails for range r.
  const double b = sigma;
  const double subexp = sigma > 0.0 ? b * mi + sigma * sigma / (2.0 * b) : 0.0;
  const std::string note =
      absl::StrCat("gamma=", Num(gamma), " sigma=", Num(sigma),
                   " gamma*sigma=", Num(gamma * sigma),
                   std::abs(gamma * sigma - 1.0) < 1e-9 ? " (gamma = 1/sigma)"
                                                        : "",
                   InstanceNote(mech, model));
  std::vector<CheckResult> results;
  results.push_back(Verdict("mutual_info.pair_kl_bound", mi, pair_kl,
                            Relation::kLessEqual, kExactTolerance, note));
  results.push_back(Verdict("mutual_info.jensen_identity", mi, pair_kl + gap,
                            Relation::kEqual, kExactTolerance,
                            absl::StrCat("jensen_gap=", Num(gap))));
  results.push_back(Verdict("mutual_info.lower", mi / gamma, structural,
                            Relation::kLessEqual, kExactTolerance,
                            absl::StrCat("|gen_structural|=", Num(structural),
                                         "; ", note)));
  results.push_back(Verdict("mutual_info.subgaussian_upper", structural, upper,
                            Relation::kLessEqual, kExactTolerance, note));
  results.push_back(Verdict("mutual_info.subexponential_upper", structural,
                            subexp, Relation::kLessEqual, kExactTolerance,
                            note));
  return results;
}

absl::StatusOr<CheckResult> CheckMaxEnt(const Mechanism& mech,
                                        const Dataset& data, int perturbations,
                                        std::uint64_t seed) {
  if (mech.table() == nullptr) {
    return absl::InvalidArgumentError("free energy needs a TableLoss");
  }
  ASSIGN_OR_RETURN(OutputDistribution posterior, Posterior(mech, data));
  const DiscreteDist& gibbs = std::get<DiscreteDist>(posterior);
  ASSIGN_OR_RETURN(double gibbs_energy, FreeEnergy(gibbs, mech, data));
  const std::size_t size = gibbs.size();
  double best = kInf;
  for (int i = 0; i < perturbations; ++i) {
    Rng rng = MakeStream(seed, StreamTag::kMaxEnt, static_cast<std::uint64_t>(i));
    std::vector<double> weights(size);
    switch (i % 3) {
      case 0: {
        // Multiplicative jitter of the posterior at a random scale.
        const double scale = std::pow(10.0, -6.0 + 6.5 * Uniform01(rng));
        std::normal_distribution<double> normal(0.0, scale);
        for (std::size_t h = 0; h < size; ++h) {
          weights[h] = std::exp(gibbs.log_probs()[h] + normal(rng));
        }
        break;
      }
      case 1:
        weights = RandomSimplex(
            size, std::pow(10.0, -1.0 + 2.0 * Uniform01(rng)), rng);
        break;
      default:
        std::fill(weights.begin(), weights.end(), 0.0);
        weights[static_cast<std::size_t>(i / 3) % size] = 1.0;
        break;
    }
    const DiscreteDist q = FromWeights(gibbs.support(), weights);
    ASSIGN_OR_RETURN(double energy, FreeEnergy(q, mech, data));
    best = std::min(best, energy);
  }
  return Verdict("maxent", gibbs_energy - best, 0.0, Relation::kLessEqual,
                 kMaxEntTolerance,
                 absl::StrCat("F(gibbs)=", Num(gibbs_energy),
                              " min F(perturbed)=", Num(best), " over ",
                              perturbations, " distributions"));
}

absl::StatusOr<std::vector<CheckResult>> RunLemmaSuite(
    const SuiteOptions& options) {
  std::vector<CheckResult> results;
  const std::uint64_t seed = options.seed;

  ASSIGN_OR_RETURN(DiscreteInstance exact, RandomDiscreteInstance(seed));
  EstimatorConfig exact_cfg;
  exact_cfg.policy = options.policy;
  ASSIGN_OR_RETURN(CheckResult t1,
                   CheckKlGenEquivalence(exact.mech, exact.model, exact_cfg));
  results.push_back(std::move(t1));

  EstimatorConfig mc_cfg;
  mc_cfg.reps = options.mc_reps;
  mc_cfg.seed = seed;
  mc_cfg.policy = options.policy;
  ASSIGN_OR_RETURN(Mechanism laplace, Mechanism::Create(AbsoluteLoss{}, 1.0));
  ASSIGN_OR_RETURN(CheckResult t1_mean,
                   CheckKlGenEquivalence(laplace, TruncatedNormalMean{}, mc_cfg,
                                 options.mc_sigmas));
  t1_mean.name = "kl_gen.mc.mean";
  results.push_back(std::move(t1_mean));
  ASSIGN_OR_RETURN(Mechanism regression,
                   Mechanism::Create(SquaredRegressionLoss{}, 1.0));
  ASSIGN_OR_RETURN(CheckResult t1_reg,
                   CheckKlGenEquivalence(regression, UniformRegression{20, 1.0},
                                 mc_cfg, options.mc_sigmas));
  t1_reg.name = "kl_gen.mc.regression";
  results.push_back(std::move(t1_reg));

  results.push_back(CheckPostprocessing(500, seed));

  InstanceShape group_shape;
  group_shape.num_symbols = 3;
  group_shape.n = 4;
  group_shape.num_hypotheses = 4;
  group_shape.gamma = 0.8;
  ASSIGN_OR_RETURN(DiscreteInstance group,
                   MakeDiscreteInstance(SplitMix64(seed ^ 0x67), group_shape));
  ASSIGN_OR_RETURN(CheckResult gp,
                   CheckGroupPrivacy(group.mech, group.model, 4));
  results.push_back(std::move(gp));

  ASSIGN_OR_RETURN(AdaptivePair pair, RandomAdaptivePair(seed, 2));
  ASSIGN_OR_RETURN(DiscreteInstance comp_base,
                   MakeDiscreteInstance(SplitMix64(seed ^ 0xc0), {2, 2, 2, 1.0}));
  ASSIGN_OR_RETURN(std::vector<CheckResult> comp,
                   CheckComposition(pair, comp_base.model));
  for (auto& r : comp) results.push_back(std::move(r));

  InstanceShape maxinfo_shape;
  maxinfo_shape.num_symbols = 3;
  maxinfo_shape.n = 3;
  maxinfo_shape.num_hypotheses = 5;
  maxinfo_shape.gamma = 1.5;
  ASSIGN_OR_RETURN(DiscreteInstance maxinfo,
                   MakeDiscreteInstance(SplitMix64(seed ^ 0x1f), maxinfo_shape));
  ASSIGN_OR_RETURN(CheckResult mi_check,
                   CheckMaxInfo(maxinfo.mech, maxinfo.model));
  results.push_back(std::move(mi_check));

  const DiscreteInstance def = DefaultDiscreteInstance();
  ASSIGN_OR_RETURN(std::vector<CheckResult> info,
                   CheckMutualInfo(def.mech, def.model));
  for (auto& r : info) results.push_back(std::move(r));

  ASSIGN_OR_RETURN(DiscreteInstance maxent, RandomDiscreteInstance(seed ^ 0x3e));
  Rng data_rng = MakeStream(seed, StreamTag::kMaxEnt, 1u << 20);
  const Dataset data = SampleDataset(maxent.model, data_rng);
  ASSIGN_OR_RETURN(CheckResult me, CheckMaxEnt(maxent.mech, data, 1000, seed));
  results.push_back(std::move(me));
  return results;
}

}  // namespace onavg
