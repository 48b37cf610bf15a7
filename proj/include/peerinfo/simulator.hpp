#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "peerinfo/agent.hpp"
#include "peerinfo/classifier.hpp"
#include "peerinfo/elicitation.hpp"
#include "peerinfo/errors.hpp"
#include "peerinfo/rng.hpp"

namespace peerinfo {

/// Closed range sampled uniformly; lo == hi pins a constant.
struct ParamRange {
  double lo = 0.0;
  double hi = 0.0;
  double sample(RandomStream& rng) const {
    if (!(std::isfinite(lo) && std::isfinite(hi) && lo <= hi))
      throw ValidationError("ParamRange: requires finite lo <= hi");
    return lo == hi ? lo : lo + (hi - lo) * rng.uniform();
  }
};

struct StandardAgentConfig {
  ParamRange wage{1.0, 1.0};
  ParamRange cost{0.033, 0.05};
  ParamRange curiosity{0.0, 0.0};
};

struct SocialAgentConfig {
  ParamRange wage{1.0, 1.0};
  ParamRange cost{0.033, 0.05};
  ParamRange lambda1{0.4, 0.9};
  ParamRange lambda2{0.3, 0.6};  // clipped to lambda1 when sampling competitive
  ParamRange delta{1.0, 1.0};
  ParamRange curiosity{0.0, 0.0};
};

struct StressAgentConfig {
  ParamRange wage{1.0, 1.0};
  ParamRange cost{0.033, 0.05};
  ParamRange theta{0.15, 0.45};
  ParamRange delta{0.0, 0.3};
  ParamRange curiosity{0.0, 0.0};
};

struct LearningAgentConfig {
  ParamRange wage{1.0, 1.0};
  ParamRange cost{0.033, 0.05};
  ParamRange alpha_s{1.0, 1.0};
  ParamRange search_cost{0.5, 2.0};
  ParamRange curiosity{0.0, 0.0};
  double alpha_lo = 0.5;
  double alpha_hi = 1.6;
  int grid_m = 13;
  double kernel_sigma = 0.2;
  double loc_a = 0.4;
  double loc_b = 0.025;
};

/// How agents form beliefs about the average for the ex post effort choice:
/// either they know the environment (point mass at the true average) or they
/// hold a pmf over the eight belief-elicitation ranges.
enum class BeliefMode { PointMassAtTruth, Bins };

inline constexpr std::array<double, 8> kBeliefBinMidpoints = {5.0,  15.5, 25.5, 35.5,
                                                              45.5, 55.5, 65.5, 75.0};

struct PopulationConfig {
  int n = 200;
  std::uint64_t seed = 1;
  double e_bar_true = 27.0;  // average rows of the reference population
  double effort_noise_sd = 0.0;
  double period_drift = 0.0;  // additive learning drift in period 2

  // mixture weights over generating models, in this order
  double mix_standard = 0.32;
  double mix_stress = 0.15;
  double mix_competitive = 0.23;
  double mix_learning = 0.30;
  double mix_inequality_averse = 0.0;

  StandardAgentConfig standard;
  StressAgentConfig stress;
  SocialAgentConfig competitive;
  SocialAgentConfig inequality_averse{{1.0, 1.0}, {0.033, 0.05}, {0.5, 0.8},
                                      {-0.3, -0.15}, {1.0, 1.0}, {0.0, 0.0}};
  LearningAgentConfig learning;

  BeliefMode belief_mode = BeliefMode::PointMassAtTruth;
  std::array<double, 8> belief_bin_probs = {0.05, 0.25, 0.40, 0.20, 0.06, 0.02, 0.01, 0.01};

  ClassifierConfig classifier;
};

inline void validate(const PopulationConfig& cfg) {
  if (cfg.n < 1) throw ValidationError("PopulationConfig: n must be >= 1");
  const double total = cfg.mix_standard + cfg.mix_stress + cfg.mix_competitive +
                       cfg.mix_learning + cfg.mix_inequality_averse;
  if (std::abs(total - 1.0) > 1e-9)
    throw ValidationError("PopulationConfig: mixture weights must sum to 1");
  if (cfg.mix_standard < 0 || cfg.mix_stress < 0 || cfg.mix_competitive < 0 ||
      cfg.mix_learning < 0 || cfg.mix_inequality_averse < 0)
    throw ValidationError("PopulationConfig: mixture weights must be nonnegative");
  if (!(cfg.e_bar_true >= 0.0)) throw ValidationError("PopulationConfig: e_bar_true must be >= 0");
  if (!(cfg.effort_noise_sd >= 0.0))
    throw ValidationError("PopulationConfig: effort_noise_sd must be >= 0");
  double bin_total = 0.0;
  for (double p : cfg.belief_bin_probs) {
    if (p < 0.0) throw ValidationError("PopulationConfig: belief bin probs must be >= 0");
    bin_total += p;
  }
  if (cfg.belief_mode == BeliefMode::Bins && std::abs(bin_total - 1.0) > 1e-9)
    throw ValidationError("PopulationConfig: belief bin probs must sum to 1");
  validate(cfg.classifier);
}

/// Beliefs an agent holds over the peer average for ex post decisions.
inline BeliefPmf agent_beliefs(const PopulationConfig& cfg) {
  if (cfg.belief_mode == BeliefMode::PointMassAtTruth)
    return BeliefPmf::point_mass(cfg.e_bar_true);
  std::vector<double> support(kBeliefBinMidpoints.begin(), kBeliefBinMidpoints.end());
  std::vector<double> probs(cfg.belief_bin_probs.begin(), cfg.belief_bin_probs.end());
  return BeliefPmf(std::move(support), std::move(probs));
}

struct BdmRecord {
  Scenario scenario_that_counts = Scenario::ExAnte;
  bool coin_direct = false;
  int draw_cents = 0;
  BdmOutcome outcome;
};

/// One simulated (or ingested) worker across both periods.
struct WorkerRecord {
  std::string worker_id;
  std::optional<AgentSpec> agent;  // absent for ingested records
  std::string model_label;
  int e1 = 0;
  int e2 = -1;  // -1 before period 2 runs
  std::optional<TreatmentArm> arm;
  WtpSchedule schedule;
  PerformanceBin bin = PerformanceBin::Within1;
  WorkerType type = WorkerType::Type1Indifferent;
  std::optional<int> cluster;
  std::optional<BdmRecord> bdm;
};

namespace detail {

enum class AgentLabel { Standard, Stress, Competitive, Learning, InequalityAverse };

inline std::vector<AgentLabel> mixture_labels(const PopulationConfig& cfg) {
  // Largest-remainder quota keeps realized shares equal to the mixture, then
  // a seeded shuffle removes the ordering artifact.
  const std::array<double, 5> weights = {cfg.mix_standard, cfg.mix_stress, cfg.mix_competitive,
                                         cfg.mix_learning, cfg.mix_inequality_averse};
  std::array<int, 5> counts{};
  std::array<double, 5> remainders{};
  int assigned = 0;
  for (int t = 0; t < 5; ++t) {
    const double exact = weights[t] * cfg.n;
    counts[t] = static_cast<int>(std::floor(exact));
    remainders[t] = exact - counts[t];
    assigned += counts[t];
  }
  std::array<int, 5> order = {0, 1, 2, 3, 4};
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return remainders[a] > remainders[b]; });
  for (int i = 0; assigned < cfg.n; ++i, ++assigned) ++counts[order[i % 5]];

  std::vector<AgentLabel> labels;
  labels.reserve(cfg.n);
  const std::array<AgentLabel, 5> all = {AgentLabel::Standard, AgentLabel::Stress,
                                         AgentLabel::Competitive, AgentLabel::Learning,
                                         AgentLabel::InequalityAverse};
  for (int t = 0; t < 5; ++t) labels.insert(labels.end(), counts[t], all[t]);

  RandomStream shuffle(cfg.seed, "population-shuffle");
  for (std::size_t i = labels.size(); i > 1; --i)
    std::swap(labels[i - 1], labels[shuffle.uniform_int(i)]);
  return labels;
}

inline AgentSpec sample_agent(const PopulationConfig& cfg, AgentLabel label, RandomStream& rng) {
  AgentSpec a;
  a.effort_noise_sd = cfg.effort_noise_sd;
  switch (label) {
    case AgentLabel::Standard: {
      a.model = ModelKind::Standard;
      a.cost = {cfg.standard.wage.sample(rng), cfg.standard.cost.sample(rng)};
      a.curiosity_cents = cfg.standard.curiosity.sample(rng);
      break;
    }
    case AgentLabel::Stress: {
      a.model = ModelKind::Stress;
      a.cost = {cfg.stress.wage.sample(rng), cfg.stress.cost.sample(rng)};
      a.stress = StressParams{cfg.stress.theta.sample(rng), cfg.stress.delta.sample(rng)};
      a.curiosity_cents = cfg.stress.curiosity.sample(rng);
      break;
    }
    case AgentLabel::Competitive: {
      a.model = ModelKind::Social;
      a.cost = {cfg.competitive.wage.sample(rng), cfg.competitive.cost.sample(rng)};
      const double l1 = cfg.competitive.lambda1.sample(rng);
      ParamRange l2_range{cfg.competitive.lambda2.lo, std::min(cfg.competitive.lambda2.hi, l1)};
      a.social = SocialPrefParams{l1, l2_range.sample(rng), cfg.competitive.delta.sample(rng),
                                  SocialKind::Competitive};
      a.curiosity_cents = cfg.competitive.curiosity.sample(rng);
      break;
    }
    case AgentLabel::InequalityAverse: {
      a.model = ModelKind::Social;
      a.cost = {cfg.inequality_averse.wage.sample(rng), cfg.inequality_averse.cost.sample(rng)};
      const double l1 = cfg.inequality_averse.lambda1.sample(rng);
      ParamRange l2_range{std::max(cfg.inequality_averse.lambda2.lo, -l1),
                          cfg.inequality_averse.lambda2.hi};
      a.social = SocialPrefParams{l1, l2_range.sample(rng),
                                  cfg.inequality_averse.delta.sample(rng),
                                  SocialKind::InequalityAverse};
      a.curiosity_cents = cfg.inequality_averse.curiosity.sample(rng);
      break;
    }
    case AgentLabel::Learning: {
      a.model = ModelKind::Learning;
      const auto& lc = cfg.learning;
      a.cost = {lc.wage.sample(rng), lc.cost.sample(rng)};
      a.learning = LearningParams{lc.alpha_s.sample(rng), lc.alpha_lo,       lc.alpha_hi,
                                  lc.search_cost.sample(rng), lc.grid_m,     lc.kernel_sigma,
                                  lc.loc_a,                lc.loc_b};
      a.curiosity_cents = lc.curiosity.sample(rng);
      break;
    }
  }
  validate(a);
  return a;
}

inline int noisy_rows(double effort, double noise_sd, double drift, RandomStream& rng) {
  const double noise = rng.normal() * noise_sd;  // drawn unconditionally for stream stability
  return static_cast<int>(std::max(0L, std::lround(effort + drift + noise)));
}

}  // namespace detail

/// Draws the pre-treatment population: agents from the mixture, period-1
/// effort with noise, the full contingent schedule anchored on the realized
/// period-1 effort, the realized bin, and the theory-driven type.
/// Deterministic given the config; per-worker substreams are derived by index.
inline std::vector<WorkerRecord> simulate_population(const PopulationConfig& cfg) {
  validate(cfg);
  const std::vector<detail::AgentLabel> labels = detail::mixture_labels(cfg);
  std::vector<WorkerRecord> records;
  records.reserve(cfg.n);
  char id[16];
  for (int i = 0; i < cfg.n; ++i) {
    RandomStream rng(cfg.seed, "population", static_cast<std::uint64_t>(i));
    WorkerRecord r;
    std::snprintf(id, sizeof(id), "w%05d", i + 1);
    r.worker_id = id;
    AgentSpec agent = detail::sample_agent(cfg, labels[i], rng);
    agent.worker_id = r.worker_id;
    r.model_label = agent_model_label(agent);
    r.e1 = detail::noisy_rows(agent_no_info_effort(agent), cfg.effort_noise_sd, 0.0, rng);
    r.schedule = build_wtp_schedule(agent, static_cast<double>(r.e1));
    r.bin = realized_bin(r.e1, cfg.e_bar_true);
    r.type = classify(r.schedule, cfg.classifier);
    r.agent = std::move(agent);
    records.push_back(std::move(r));
  }
  return records;
}

/// Assigns arms, resolves the Choose-Your-Info mechanism, and runs period 2.
/// Workers who avoid (or never receive) information behave like Control.
inline void run_experiment(std::vector<WorkerRecord>& records, const PopulationConfig& cfg) {
  validate(cfg);
  const BeliefPmf beliefs = agent_beliefs(cfg);
  for (std::size_t i = 0; i < records.size(); ++i) {
    WorkerRecord& r = records[i];
    if (!r.agent) throw ValidationError("run_experiment: record lacks an agent spec");
    const AgentSpec& agent = *r.agent;

    RandomStream assign_rng(cfg.seed, "assignment", static_cast<std::uint64_t>(i));
    r.arm = assign_arm(assign_rng.uniform());

    bool info_exante = false, info_expost = false;
    switch (*r.arm) {
      case TreatmentArm::Control: break;
      case TreatmentArm::ExAnteInfo: info_exante = true; break;
      case TreatmentArm::ExPostInfo: info_expost = true; break;
      case TreatmentArm::ChooseYourInfo: {
        RandomStream bdm_rng(cfg.seed, "bdm", static_cast<std::uint64_t>(i));
        BdmRecord bdm;
        bdm.scenario_that_counts =
            bdm_rng.uniform() < 0.5 ? Scenario::ExAnte : Scenario::ExPost;
        bdm.coin_direct = bdm_rng.uniform() < 0.5;
        bdm.draw_cents = static_cast<int>(bdm_rng.uniform_int(51));
        const bool prefer = r.schedule.prefer_info(bdm.scenario_that_counts, r.bin);
        const int cents = r.schedule.wtp_cents(bdm.scenario_that_counts, r.bin);
        bdm.outcome = bdm_resolve(prefer, cents, bdm.coin_direct, bdm.draw_cents);
        if (bdm.outcome.receives_info) {
          info_exante = bdm.scenario_that_counts == Scenario::ExAnte;
          info_expost = bdm.scenario_that_counts == Scenario::ExPost;
        }
        r.bdm = bdm;
        break;
      }
    }

    double base_effort;
    if (info_exante) {
      RandomStream learn_rng(cfg.seed, "learning", static_cast<std::uint64_t>(i));
      base_effort = agent_effort_exante(agent, cfg.e_bar_true, learn_rng.uniform());
    } else if (info_expost) {
      base_effort = agent_effort_expost(agent, beliefs);
    } else {
      base_effort = agent_no_info_effort(agent);
    }

    RandomStream noise_rng(cfg.seed, "noise", static_cast<std::uint64_t>(i));
    r.e2 = detail::noisy_rows(base_effort, cfg.effort_noise_sd, cfg.period_drift, noise_rng);
  }
}

enum class Grouping { All, ByType, ByCluster };

struct EffectCell {
  double effect = 0.0;
  double se = 0.0;
  bool defined = false;
};

struct EffectRow {
  std::string subgroup;
  std::size_t n_control = 0, n_exante = 0, n_expost = 0, n_choose = 0;
  double control_mean_change = 0.0;
  EffectCell exante;
  EffectCell expost;
};

struct EffectTable {
  Grouping grouping = Grouping::All;
  std::vector<EffectRow> rows;
};

namespace detail {

struct RunningSample {
  std::vector<double> values;
  void add(double v) { values.push_back(v); }
  std::size_t n() const { return values.size(); }
  double mean() const {
    return values.empty()
               ? 0.0
               : std::accumulate(values.begin(), values.end(), 0.0) / values.size();
  }
  double variance() const {  // sample variance, n-1 denominator
    if (values.size() < 2) return 0.0;
    const double m = mean();
    double s = 0.0;
    for (double v : values) s += (v - m) * (v - m);
    return s / (values.size() - 1);
  }
};

inline EffectCell difference_in_means(const RunningSample& treated, const RunningSample& control) {
  EffectCell cell;
  if (treated.n() == 0 || control.n() == 0) return cell;
  cell.defined = true;
  cell.effect = treated.mean() - control.mean();
  const std::size_t df = treated.n() + control.n() - 2;
  if (df > 0) {
    const double pooled = ((treated.n() - 1) * treated.variance() +
                           (control.n() - 1) * control.variance()) /
                          static_cast<double>(df);
    cell.se = std::sqrt(pooled * (1.0 / treated.n() + 1.0 / control.n()));
  }
  return cell;
}

}  // namespace detail

/// Difference-in-means treatment effects on the period-to-period change in
/// effort, by subgroup. Choose-Your-Info workers are excluded from the
/// estimates (their information receipt is endogenous) but counted.
inline EffectTable estimate_effects(const std::vector<WorkerRecord>& records, Grouping grouping) {
  auto subgroup_of = [&](const WorkerRecord& r) -> std::string {
    switch (grouping) {
      case Grouping::All: return "all";
      case Grouping::ByType: return "type" + std::to_string(type_id(r.type));
      case Grouping::ByCluster:
        return r.cluster ? "cluster" + std::to_string(*r.cluster) : "unclustered";
    }
    return "all";
  };

  std::vector<std::string> order;
  std::map<std::string, std::array<detail::RunningSample, 3>> samples;  // control/exante/expost
  std::map<std::string, std::array<std::size_t, 4>> counts;
  for (const WorkerRecord& r : records) {
    if (!r.arm || r.e2 < 0)
      throw ValidationError("estimate_effects: records must have completed the experiment");
    const std::string key = subgroup_of(r);
    if (!samples.count(key)) {
      order.push_back(key);
      samples[key];
      counts[key] = {0, 0, 0, 0};
    }
    const double change = static_cast<double>(r.e2 - r.e1);
    switch (*r.arm) {
      case TreatmentArm::Control:
        samples[key][0].add(change);
        ++counts[key][0];
        break;
      case TreatmentArm::ExAnteInfo:
        samples[key][1].add(change);
        ++counts[key][1];
        break;
      case TreatmentArm::ExPostInfo:
        samples[key][2].add(change);
        ++counts[key][2];
        break;
      case TreatmentArm::ChooseYourInfo: ++counts[key][3]; break;
    }
  }

  EffectTable table;
  table.grouping = grouping;
  std::sort(order.begin(), order.end());
  for (const std::string& key : order) {
    EffectRow row;
    row.subgroup = key;
    row.n_control = counts[key][0];
    row.n_exante = counts[key][1];
    row.n_expost = counts[key][2];
    row.n_choose = counts[key][3];
    row.control_mean_change = samples[key][0].mean();
    row.exante = detail::difference_in_means(samples[key][1], samples[key][0]);
    row.expost = detail::difference_in_means(samples[key][2], samples[key][0]);
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace peerinfo
