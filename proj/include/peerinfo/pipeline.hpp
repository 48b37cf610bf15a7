#pragma once

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "peerinfo/io.hpp"

namespace peerinfo {

struct ClusterOptions {
  int k_min = 2;
  int k_max = 8;
  int restarts = 8;
  bool normalize = false;
  std::optional<std::uint64_t> seed;  // defaults to the master seed
};

/// Everything a run needs: module configs, seeds, and output settings.
struct RunConfig {
  PopulationConfig population;
  ClusterOptions cluster;
  Policy targeted = targeted_type2_expost();
  VerifyConfig verify;
  std::string out_dir = ".";
  std::string format = "csv";  // csv | jsonl
};

namespace config {

inline ParamRange parse_range(const nlohmann::json& j, const ParamRange& fallback) {
  if (j.is_null()) return fallback;
  if (j.is_number()) return {j.get<double>(), j.get<double>()};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ValidationError("config: parameter range must be a number or [lo, hi]");
}

inline ParamRange range_or(const nlohmann::json& j, const char* key, const ParamRange& fallback) {
  return j.contains(key) ? parse_range(j.at(key), fallback) : fallback;
}

template <class T>
T value_or(const nlohmann::json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

inline void parse_agent_common(const nlohmann::json& j, ParamRange& wage, ParamRange& cost,
                               ParamRange& curiosity) {
  wage = range_or(j, "wage", wage);
  cost = range_or(j, "cost", cost);
  curiosity = range_or(j, "curiosity", curiosity);
}

inline PopulationConfig parse_population(const nlohmann::json& j) {
  PopulationConfig cfg;
  cfg.n = value_or(j, "n", cfg.n);
  cfg.seed = value_or(j, "seed", cfg.seed);
  cfg.e_bar_true = value_or(j, "e_bar_true", cfg.e_bar_true);
  cfg.effort_noise_sd = value_or(j, "effort_noise_sd", cfg.effort_noise_sd);
  cfg.period_drift = value_or(j, "period_drift", cfg.period_drift);
  if (j.contains("mixture")) {
    const auto& m = j.at("mixture");
    cfg.mix_standard = value_or(m, "standard", 0.0);
    cfg.mix_stress = value_or(m, "stress", 0.0);
    cfg.mix_competitive = value_or(m, "competitive", 0.0);
    cfg.mix_learning = value_or(m, "learning", 0.0);
    cfg.mix_inequality_averse = value_or(m, "inequality_averse", 0.0);
  }
  if (j.contains("belief_mode")) {
    const std::string mode = j.at("belief_mode").get<std::string>();
    if (mode == "point_mass")
      cfg.belief_mode = BeliefMode::PointMassAtTruth;
    else if (mode == "bins")
      cfg.belief_mode = BeliefMode::Bins;
    else
      throw ValidationError("config: belief_mode must be 'point_mass' or 'bins'");
  }
  if (j.contains("belief_bin_probs")) {
    const auto& probs = j.at("belief_bin_probs");
    if (!probs.is_array() || probs.size() != cfg.belief_bin_probs.size())
      throw ValidationError("config: belief_bin_probs must list 8 probabilities");
    for (std::size_t i = 0; i < cfg.belief_bin_probs.size(); ++i)
      cfg.belief_bin_probs[i] = probs[i].get<double>();
  }
  if (j.contains("standard"))
    parse_agent_common(j.at("standard"), cfg.standard.wage, cfg.standard.cost,
                       cfg.standard.curiosity);
  if (j.contains("stress")) {
    const auto& s = j.at("stress");
    parse_agent_common(s, cfg.stress.wage, cfg.stress.cost, cfg.stress.curiosity);
    cfg.stress.theta = range_or(s, "theta", cfg.stress.theta);
    cfg.stress.delta = range_or(s, "delta", cfg.stress.delta);
  }
  auto parse_social = [](const nlohmann::json& s, SocialAgentConfig& out) {
    parse_agent_common(s, out.wage, out.cost, out.curiosity);
    out.lambda1 = range_or(s, "lambda1", out.lambda1);
    out.lambda2 = range_or(s, "lambda2", out.lambda2);
    out.delta = range_or(s, "delta", out.delta);
  };
  if (j.contains("competitive")) parse_social(j.at("competitive"), cfg.competitive);
  if (j.contains("inequality_averse"))
    parse_social(j.at("inequality_averse"), cfg.inequality_averse);
  if (j.contains("learning")) {
    const auto& l = j.at("learning");
    parse_agent_common(l, cfg.learning.wage, cfg.learning.cost, cfg.learning.curiosity);
    cfg.learning.alpha_s = range_or(l, "alpha_s", cfg.learning.alpha_s);
    cfg.learning.search_cost = range_or(l, "search_cost", cfg.learning.search_cost);
    cfg.learning.alpha_lo = value_or(l, "alpha_lo", cfg.learning.alpha_lo);
    cfg.learning.alpha_hi = value_or(l, "alpha_hi", cfg.learning.alpha_hi);
    cfg.learning.grid_m = value_or(l, "grid_m", cfg.learning.grid_m);
    cfg.learning.kernel_sigma = value_or(l, "kernel_sigma", cfg.learning.kernel_sigma);
    cfg.learning.loc_a = value_or(l, "loc_a", cfg.learning.loc_a);
    cfg.learning.loc_b = value_or(l, "loc_b", cfg.learning.loc_b);
  }
  return cfg;
}

inline ClassifierConfig parse_classifier(const nlohmann::json& j) {
  ClassifierConfig cfg;
  if (j.contains("probe_bins")) {
    const auto& probes = j.at("probe_bins");
    if (!probes.is_array() || probes.size() != 3)
      throw ValidationError("config: probe_bins must list exactly 3 bin ids");
    for (int i = 0; i < 3; ++i) cfg.probes[i] = bin_from_id(probes[i].get<int>());
  }
  cfg.epsilon_cents = value_or(j, "epsilon_cents", cfg.epsilon_cents);
  validate(cfg);
  return cfg;
}

inline PolicyAssignment parse_assignment(const std::string& s) {
  if (s == "exante") return Scenario::ExAnte;
  if (s == "expost") return Scenario::ExPost;
  if (s == "none") return std::nullopt;
  throw ValidationError("config: policy assignment must be 'exante', 'expost', or 'none'");
}

inline RunConfig parse_run_config(const nlohmann::json& j) {
  RunConfig cfg;
  if (j.contains("population")) cfg.population = parse_population(j.at("population"));
  if (j.contains("classifier"))
    cfg.population.classifier = parse_classifier(j.at("classifier"));
  if (j.contains("cluster")) {
    const auto& c = j.at("cluster");
    cfg.cluster.k_min = value_or(c, "k_min", cfg.cluster.k_min);
    cfg.cluster.k_max = value_or(c, "k_max", cfg.cluster.k_max);
    cfg.cluster.restarts = value_or(c, "restarts", cfg.cluster.restarts);
    cfg.cluster.normalize = value_or(c, "normalize", cfg.cluster.normalize);
    if (c.contains("seed")) cfg.cluster.seed = c.at("seed").get<std::uint64_t>();
  }
  if (j.contains("welfare") && j.at("welfare").contains("targeted")) {
    const auto& t = j.at("welfare").at("targeted");
    std::map<WorkerType, PolicyAssignment> map;
    for (int i = 1; i <= 4; ++i) {
      const std::string key = "type" + std::to_string(i);
      if (!t.contains(key)) throw ValidationError("config: targeted policy must set " + key);
      map[type_from_id(i)] = parse_assignment(t.at(key).get<std::string>());
    }
    cfg.targeted = Policy::targeted_map(std::move(map));
  }
  if (j.contains("verify")) {
    const auto& v = j.at("verify");
    cfg.verify.tol = value_or(v, "tolerance", cfg.verify.tol);
    cfg.verify.fd_tol = value_or(v, "fd_tolerance", cfg.verify.fd_tol);
    cfg.verify.fd_step = value_or(v, "fd_step", cfg.verify.fd_step);
    cfg.verify.oracle_step = value_or(v, "oracle_step", cfg.verify.oracle_step);
    cfg.verify.with_oracle = value_or(v, "with_oracle", cfg.verify.with_oracle);
  }
  return cfg;
}

inline RunConfig load_run_config(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(io::read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
  try {
    return parse_run_config(j);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

}  // namespace config

enum class Command { Simulate, Elicit, Classify, Cluster, Welfare, Verify, Report };

struct CommandInputs {
  std::string schedules;
  std::string embeddings;
  std::string workers;
  std::string clusters;
};

namespace detail {

inline std::string out_path(const RunConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.out_dir);
  return (std::filesystem::path(cfg.out_dir) / name).string();
}

inline std::vector<std::pair<std::string, WtpSchedule>> schedules_of(
    const std::vector<WorkerRecord>& records) {
  std::vector<std::pair<std::string, WtpSchedule>> out;
  out.reserve(records.size());
  for (const WorkerRecord& r : records) out.emplace_back(r.worker_id, r.schedule);
  return out;
}

inline int cmd_simulate(const RunConfig& cfg, std::ostream& log) {
  std::vector<WorkerRecord> records = simulate_population(cfg.population);
  run_experiment(records, cfg.population);
  io::write_workers(out_path(cfg, "workers.csv"), records);
  io::write_schedules(out_path(cfg, "schedules.csv"), schedules_of(records));
  log << "simulate: " << records.size() << " workers -> workers.csv, schedules.csv\n";
  return 0;
}

inline int cmd_elicit(const RunConfig& cfg, std::ostream& log) {
  const std::vector<WorkerRecord> records = simulate_population(cfg.population);
  io::write_schedules(out_path(cfg, "schedules.csv"), schedules_of(records));
  log << "elicit: " << records.size() << " workers -> schedules.csv\n";
  return 0;
}

inline int cmd_classify(const RunConfig& cfg, const CommandInputs& in, std::ostream& log) {
  if (in.schedules.empty()) throw ValidationError("classify: --schedules <path> is required");
  const auto schedules = io::ingest_schedules(in.schedules);
  std::vector<std::pair<std::string, WorkerType>> types;
  types.reserve(schedules.size());
  for (const auto& [id, schedule] : schedules)
    types.emplace_back(id, classify(schedule, cfg.population.classifier));
  io::write_file(out_path(cfg, "types.csv"), io::render_types(types));
  log << "classify: " << types.size() << " workers -> types.csv\n";
  return 0;
}

inline int cmd_cluster(const RunConfig& cfg, const CommandInputs& in, std::ostream& log) {
  if (in.embeddings.empty()) throw ValidationError("cluster: --embeddings <path> is required");
  EmbeddingMatrix X = io::ingest_embeddings(in.embeddings);
  if (cfg.cluster.normalize) X = l2_normalize(std::move(X));
  const std::uint64_t seed = cfg.cluster.seed.value_or(cfg.population.seed);
  const int k_max = std::min<int>(cfg.cluster.k_max, static_cast<int>(X.rows()) - 1);

  // per-k best-of-restarts, mirroring select_k's seed derivation exactly
  std::map<int, ClusterResult> best;
  for (int k = cfg.cluster.k_min; k <= k_max; ++k) {
    for (int r = 0; r < cfg.cluster.restarts; ++r) {
      ClusterResult run = kmeans(X, k, seed + static_cast<std::uint64_t>(r));
      if (!best.count(k) || run.inertia < best[k].inertia) best[k] = std::move(run);
    }
  }
  const int selected = select_k(X, cfg.cluster.k_min, k_max, seed, cfg.cluster.restarts);

  io::write_file(out_path(cfg, "clusters.csv"), io::render_clusters(X.ids, best[selected].labels));
  std::string report;
  if (cfg.format == "jsonl") {
    for (const auto& [k, res] : best) {
      nlohmann::ordered_json j;
      j["k"] = k;
      j["inertia"] = res.inertia;
      j["silhouette"] = res.silhouette;
      j["selected"] = k == selected;
      report += j.dump() + "\n";
    }
    io::write_file(out_path(cfg, "cluster_report.jsonl"), report);
  } else {
    report = "k,inertia,silhouette,selected\n";
    for (const auto& [k, res] : best)
      report += std::to_string(k) + "," + io::fmt_double(res.inertia) + "," +
                io::fmt_double(res.silhouette) + "," + (k == selected ? "1" : "0") + "\n";
    io::write_file(out_path(cfg, "cluster_report.csv"), report);
  }
  log << "cluster: selected k=" << selected << " over " << X.rows()
      << " workers -> clusters.csv, cluster_report." << (cfg.format == "jsonl" ? "jsonl" : "csv")
      << "\n";
  return 0;
}

inline int cmd_welfare(const RunConfig& cfg, const CommandInputs& in, std::ostream& log) {
  if (in.workers.empty()) throw ValidationError("welfare: --workers <path> is required");
  const std::vector<WorkerRecord> records = io::ingest_workers(in.workers);
  const PolicyOutcome uniform_ex = evaluate_policy(records, Policy::uniform_exante());
  const PolicyOutcome uniform_post = evaluate_policy(records, Policy::uniform_expost());
  const PolicyOutcome targeted = evaluate_policy(records, cfg.targeted);

  auto gain_against = [](const PolicyOutcome& target,
                         const PolicyOutcome& base) -> std::optional<double> {
    if (base.mean_payoff <= 0.0) return std::nullopt;  // gain undefined, reported as missing
    return 100.0 * (target.mean_payoff - base.mean_payoff) / base.mean_payoff;
  };
  std::vector<io::PolicyReportRow> rows;
  for (const PolicyOutcome& o : {uniform_ex, uniform_post, targeted})
    rows.push_back({o, gain_against(o, uniform_ex), gain_against(o, uniform_post)});

  if (cfg.format == "jsonl")
    io::write_file(out_path(cfg, "policy_report.jsonl"), io::render_policy_report_jsonl(rows));
  else
    io::write_file(out_path(cfg, "policy_report.csv"), io::render_policy_report_csv(rows));
  log << "welfare: " << records.size() << " workers -> policy_report."
      << (cfg.format == "jsonl" ? "jsonl" : "csv") << "\n";
  return 0;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& log) {
  const TheoryReport report = verify_predictions(cfg.verify);
  io::write_file(out_path(cfg, "theory_report.json"), io::render_theory_report(report));
  for (const HypothesisResult& r : report.results)
    log << (r.pass() ? "PASS" : "FAIL") << "  " << r.id << "  (checks=" << r.checks
        << ", max_violation=" << io::fmt_double(r.max_violation) << ")\n";
  log << "verify: " << (report.all_pass() ? "all hypotheses hold" : "violations found")
      << " -> theory_report.json\n";
  return report.all_pass() ? 0 : 2;
}

inline int cmd_report(const RunConfig& cfg, const CommandInputs& in, std::ostream& log) {
  if (in.workers.empty()) throw ValidationError("report: --workers <path> is required");
  std::vector<WorkerRecord> records = io::ingest_workers(in.workers);
  bool have_clusters = false;
  if (!in.clusters.empty()) {
    std::map<std::string, int> labels;
    for (const auto& [id, label] : io::ingest_clusters(in.clusters)) labels[id] = label;
    for (WorkerRecord& r : records) {
      auto it = labels.find(r.worker_id);
      if (it != labels.end()) r.cluster = it->second;
    }
    have_clusters = true;
  }

  const bool jsonl = cfg.format == "jsonl";
  const std::string ext = jsonl ? ".jsonl" : ".csv";
  auto render = [&](const EffectTable& t) {
    return jsonl ? io::render_effects_jsonl(t) : io::render_effects_csv(t);
  };
  io::write_file(out_path(cfg, "effects_all" + ext), render(estimate_effects(records, Grouping::All)));
  io::write_file(out_path(cfg, "effects_by_type" + ext),
                 render(estimate_effects(records, Grouping::ByType)));
  if (have_clusters)
    io::write_file(out_path(cfg, "effects_by_cluster" + ext),
                   render(estimate_effects(records, Grouping::ByCluster)));

  std::vector<WorkerType> types;
  types.reserve(records.size());
  for (const WorkerRecord& r : records) types.push_back(r.type);
  const std::array<double, 4> shares = type_shares(types);
  std::string shares_csv = "type,share,count\n";
  std::array<int, 4> counts{};
  for (const WorkerRecord& r : records) ++counts[type_id(r.type) - 1];
  for (int t = 0; t < 4; ++t)
    shares_csv += std::to_string(t + 1) + "," + io::fmt_double(shares[t]) + "," +
                  std::to_string(counts[t]) + "\n";
  io::write_file(out_path(cfg, "type_shares.csv"), shares_csv);

  log << "report: " << records.size() << " workers -> effects_all" << ext
      << ", effects_by_type" << ext << (have_clusters ? ", effects_by_cluster" + ext : "")
      << ", type_shares.csv\n";
  return 0;
}

}  // namespace detail

/// Executes one subcommand. Returns 0 on success, 2 when `verify` finds a
/// failed hypothesis; validation problems throw ValidationError (exit 1 at
/// the CLI boundary).
inline int run_command(Command cmd, const RunConfig& cfg, const CommandInputs& inputs = {},
                       std::ostream& log = std::cout) {
  switch (cmd) {
    case Command::Simulate: return detail::cmd_simulate(cfg, log);
    case Command::Elicit: return detail::cmd_elicit(cfg, log);
    case Command::Classify: return detail::cmd_classify(cfg, inputs, log);
    case Command::Cluster: return detail::cmd_cluster(cfg, inputs, log);
    case Command::Welfare: return detail::cmd_welfare(cfg, inputs, log);
    case Command::Verify: return detail::cmd_verify(cfg, log);
    case Command::Report: return detail::cmd_report(cfg, inputs, log);
  }
  throw ValidationError("unknown command");
}

}  // namespace peerinfo
