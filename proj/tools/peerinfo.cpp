// Command-line front end: ties simulation, elicitation, classification,
// clustering, welfare accounting, and theory verification together.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "peerinfo/pipeline.hpp"

namespace {

struct CliOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::string format = "csv";
  peerinfo::CommandInputs inputs;
};

void add_common(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--config", opt.config_path, "JSON configuration file");
  cmd->add_option("--seed", opt.seed, "master seed override (64-bit)");
  cmd->add_option("--out", opt.out_dir, "output directory (default $PEERINFO_OUT or .)");
  cmd->add_option("--format", opt.format, "report format: csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));
}

peerinfo::RunConfig build_config(const CliOptions& opt) {
  peerinfo::RunConfig cfg;
  if (!opt.config_path.empty()) cfg = peerinfo::config::load_run_config(opt.config_path);
  if (opt.seed) cfg.population.seed = *opt.seed;
  if (!opt.out_dir.empty()) {
    cfg.out_dir = opt.out_dir;
  } else if (const char* env = std::getenv("PEERINFO_OUT"); env && *env) {
    cfg.out_dir = env;
  }
  cfg.format = opt.format;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"peer-information preference toolkit"};
  app.require_subcommand(1);

  CliOptions opt;
  auto* simulate = app.add_subcommand("simulate", "simulate a population through both periods");
  auto* elicit = app.add_subcommand("elicit", "emit contingent WTP schedules for a population");
  auto* classify = app.add_subcommand("classify", "type workers from a schedule file");
  auto* cluster = app.add_subcommand("cluster", "k-means over an embedding file");
  auto* welfare = app.add_subcommand("welfare", "compare information policies on worker records");
  auto* verify = app.add_subcommand("verify", "run the numerical theory checks");
  auto* report = app.add_subcommand("report", "treatment-effect and type-share tables");

  for (CLI::App* cmd : {simulate, elicit, classify, cluster, welfare, verify, report})
    add_common(cmd, opt);
  classify->add_option("--schedules", opt.inputs.schedules, "schedule CSV")->required();
  cluster->add_option("--embeddings", opt.inputs.embeddings, "embedding file")->required();
  welfare->add_option("--workers", opt.inputs.workers, "worker record CSV")->required();
  report->add_option("--workers", opt.inputs.workers, "worker record CSV")->required();
  report->add_option("--clusters", opt.inputs.clusters, "cluster label CSV (optional)");

  CLI11_PARSE(app, argc, argv);

  peerinfo::Command cmd;
  if (simulate->parsed()) cmd = peerinfo::Command::Simulate;
  else if (elicit->parsed()) cmd = peerinfo::Command::Elicit;
  else if (classify->parsed()) cmd = peerinfo::Command::Classify;
  else if (cluster->parsed()) cmd = peerinfo::Command::Cluster;
  else if (welfare->parsed()) cmd = peerinfo::Command::Welfare;
  else if (verify->parsed()) cmd = peerinfo::Command::Verify;
  else cmd = peerinfo::Command::Report;

  try {
    return peerinfo::run_command(cmd, build_config(opt), opt.inputs, std::cout);
  } catch (const peerinfo::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
