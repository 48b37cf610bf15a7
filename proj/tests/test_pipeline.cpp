#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <sstream>
#include <string>

#include "peerinfo/pipeline.hpp"

using namespace peerinfo;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("peerinfo_pipe_" + std::to_string(::getpid()) + "_" +
            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

RunConfig base_config(const std::string& out_dir) {
  RunConfig cfg;
  cfg.out_dir = out_dir;
  cfg.population.n = 120;
  cfg.population.seed = 99;
  return cfg;
}

std::size_t count_rows(const std::string& path) {
  std::size_t rows = 0;
  for (const std::string& line : io::split_lines(io::read_file(path)))
    if (!line.empty()) ++rows;
  return rows - 1;  // header
}

}  // namespace

TEST_CASE("config parsing") {
  const nlohmann::json j = nlohmann::json::parse(R"({
    "population": {
      "n": 33, "seed": 5, "e_bar_true": 30.0, "effort_noise_sd": 1.5,
      "mixture": {"standard": 0.5, "stress": 0.5},
      "stress": {"theta": [0.2, 0.4], "delta": 0.1},
      "belief_mode": "bins"
    },
    "classifier": {"probe_bins": [2, 5, 8], "epsilon_cents": 1},
    "cluster": {"k_min": 2, "k_max": 4, "restarts": 3, "normalize": true},
    "welfare": {"targeted": {"type1": "none", "type2": "expost",
                              "type3": "exante", "type4": "exante"}},
    "verify": {"tolerance": 1e-6}
  })");
  const RunConfig cfg = config::parse_run_config(j);
  REQUIRE(cfg.population.n == 33);
  REQUIRE(cfg.population.seed == 5);
  REQUIRE(cfg.population.mix_standard == 0.5);
  REQUIRE(cfg.population.mix_competitive == 0.0);
  REQUIRE(cfg.population.stress.theta.lo == 0.2);
  REQUIRE(cfg.population.stress.delta.lo == 0.1);
  REQUIRE(cfg.population.stress.delta.hi == 0.1);
  REQUIRE(cfg.population.belief_mode == BeliefMode::Bins);
  REQUIRE(cfg.population.classifier.probes[0] == PerformanceBin::Below11to20);
  REQUIRE(cfg.population.classifier.epsilon_cents == 1);
  REQUIRE(cfg.cluster.k_max == 4);
  REQUIRE(cfg.cluster.normalize);
  REQUIRE(cfg.targeted.assignment_for(WorkerType::Type1Indifferent) == PolicyAssignment{});
  REQUIRE(cfg.verify.tol == 1e-6);

  REQUIRE_THROWS_AS(
      config::parse_run_config(nlohmann::json::parse(R"({"population":{"standard":{"cost":[1]}}})")),
      ValidationError);
  REQUIRE_THROWS_AS(
      config::parse_run_config(nlohmann::json::parse(R"({"classifier":{"probe_bins":[1,2]}})")),
      ValidationError);
}

TEST_CASE("simulate, classify, welfare, report stay consistent") {
  TempDir dir;
  RunConfig cfg = base_config(dir.file("out"));
  std::ostringstream log;
  REQUIRE(run_command(Command::Simulate, cfg, {}, log) == 0);

  CommandInputs inputs;
  inputs.schedules = dir.file("out/schedules.csv");
  inputs.workers = dir.file("out/workers.csv");
  REQUIRE(run_command(Command::Classify, cfg, inputs, log) == 0);
  REQUIRE(run_command(Command::Welfare, cfg, inputs, log) == 0);
  REQUIRE(run_command(Command::Report, cfg, inputs, log) == 0);

  const std::size_t n = cfg.population.n;
  REQUIRE(count_rows(dir.file("out/workers.csv")) == n);
  REQUIRE(count_rows(dir.file("out/schedules.csv")) == n * 18);
  REQUIRE(count_rows(dir.file("out/types.csv")) == n);
  REQUIRE(count_rows(dir.file("out/policy_report.csv")) == 3);
  REQUIRE(count_rows(dir.file("out/type_shares.csv")) == 4);

  // classify agrees with the types already in the worker records
  const auto workers = io::ingest_workers(inputs.workers);
  const auto types_csv = io::read_file(dir.file("out/types.csv"));
  for (const auto& w : workers)
    REQUIRE(types_csv.find(w.worker_id + "," + std::to_string(type_id(w.type))) !=
            std::string::npos);
}

TEST_CASE("jsonl reports parse line by line") {
  TempDir dir;
  RunConfig cfg = base_config(dir.file("out"));
  cfg.format = "jsonl";
  std::ostringstream log;
  REQUIRE(run_command(Command::Simulate, cfg, {}, log) == 0);
  CommandInputs inputs;
  inputs.workers = dir.file("out/workers.csv");
  REQUIRE(run_command(Command::Welfare, cfg, inputs, log) == 0);
  REQUIRE(run_command(Command::Report, cfg, inputs, log) == 0);

  const auto lines = io::split_lines(io::read_file(dir.file("out/policy_report.jsonl")));
  REQUIRE(lines.size() == 3);
  for (const std::string& line : lines) {
    const auto j = nlohmann::json::parse(line);
    REQUIRE(j.contains("policy"));
    REQUIRE(j.contains("mean_payoff_cents"));
    REQUIRE(j.contains("n_type4"));
  }
  const auto effects = io::split_lines(io::read_file(dir.file("out/effects_by_type.jsonl")));
  REQUIRE_FALSE(effects.empty());
  REQUIRE(nlohmann::json::parse(effects[0]).contains("effect_exante"));
}

TEST_CASE("elicit emits schedules only") {
  TempDir dir;
  RunConfig cfg = base_config(dir.file("out"));
  std::ostringstream log;
  REQUIRE(run_command(Command::Elicit, cfg, {}, log) == 0);
  REQUIRE(fs::exists(dir.file("out/schedules.csv")));
  REQUIRE_FALSE(fs::exists(dir.file("out/workers.csv")));
}

TEST_CASE("cluster command selects two blobs") {
  TempDir dir;
  // deterministic two-blob embedding fixture
  EmbeddingMatrix X;
  X.dim = 2;
  RandomStream rng(3, "fixture");
  for (int i = 0; i < 30; ++i) {
    X.ids.push_back("w" + std::to_string(i));
    const double cx = i < 15 ? 0.0 : 9.0;
    X.data.push_back(cx + 0.3 * rng.uniform());
    X.data.push_back(cx + 0.3 * rng.uniform());
  }
  io::write_embeddings(dir.file("emb.txt"), X);

  RunConfig cfg = base_config(dir.file("out"));
  cfg.cluster.k_max = 5;
  CommandInputs inputs;
  inputs.embeddings = dir.file("emb.txt");
  std::ostringstream log;
  REQUIRE(run_command(Command::Cluster, cfg, inputs, log) == 0);

  const std::string report = io::read_file(dir.file("out/cluster_report.csv"));
  REQUIRE(report.find("2,") != std::string::npos);
  bool selected_two = false;
  for (const std::string& line : io::split_lines(report))
    if (line.rfind("2,", 0) == 0 && line.back() == '1') selected_two = true;
  REQUIRE(selected_two);
  REQUIRE(count_rows(dir.file("out/clusters.csv")) == 30);
}

TEST_CASE("verify command writes a report and sets the exit code") {
  TempDir dir;
  RunConfig cfg = base_config(dir.file("out"));
  cfg.verify.wages = {1.0};
  cfg.verify.costs = {0.05};
  cfg.verify.standard_wages = {1.0};
  cfg.verify.standard_costs = {0.05};
  cfg.verify.competitive_lambdas = {{0.5, 0.2}};
  cfg.verify.ia_lambdas = {{0.5, -0.2}};
  cfg.verify.thetas = {0.05};
  cfg.verify.stress_deltas = {0.5};
  cfg.verify.learning_alpha_s = {1.0};
  cfg.verify.learning_costs_k = {1.0};
  cfg.verify.learning_alpha_sweep = {0.9, 1.1};
  cfg.verify.with_oracle = false;

  std::ostringstream log;
  REQUIRE(run_command(Command::Verify, cfg, {}, log) == 0);
  REQUIRE(fs::exists(dir.file("out/theory_report.json")));
  REQUIRE(log.str().find("PASS") != std::string::npos);

  cfg.verify.ia_lambdas = {{0.5, 0.2}};  // corrupted sign: hypothesis failure
  REQUIRE(run_command(Command::Verify, cfg, {}, log) == 2);
}

TEST_CASE("missing required inputs fail validation") {
  TempDir dir;
  RunConfig cfg = base_config(dir.file("out"));
  std::ostringstream log;
  REQUIRE_THROWS_AS(run_command(Command::Classify, cfg, {}, log), ValidationError);
  REQUIRE_THROWS_AS(run_command(Command::Welfare, cfg, {}, log), ValidationError);
  REQUIRE_THROWS_AS(run_command(Command::Cluster, cfg, {}, log), ValidationError);
}

TEST_CASE("identical configs reproduce artifacts byte for byte") {
  TempDir dir;
  std::ostringstream log;
  RunConfig a = base_config(dir.file("a"));
  a.population.effort_noise_sd = 2.0;
  RunConfig b = base_config(dir.file("b"));
  b.population.effort_noise_sd = 2.0;
  REQUIRE(run_command(Command::Simulate, a, {}, log) == 0);
  REQUIRE(run_command(Command::Simulate, b, {}, log) == 0);
  REQUIRE(io::read_file(dir.file("a/workers.csv")) == io::read_file(dir.file("b/workers.csv")));
  REQUIRE(io::read_file(dir.file("a/schedules.csv")) ==
          io::read_file(dir.file("b/schedules.csv")));
}
