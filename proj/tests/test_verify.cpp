#include <catch2/catch_amalgamated.hpp>

#include "peerinfo/verify.hpp"

using namespace peerinfo;

namespace {

// trimmed grids keep the unit suite quick; the acceptance suite runs the
// full default configuration
VerifyConfig small_config() {
  VerifyConfig cfg;
  cfg.wages = {1.0};
  cfg.costs = {0.04, 0.1};
  cfg.standard_wages = {1.0, 2.0};
  cfg.standard_costs = {0.04, 0.1};
  cfg.competitive_lambdas = {{0.5, 0.2}, {0.8, 0.6}};
  cfg.ia_lambdas = {{0.5, -0.2}, {1.0, -0.6}};
  cfg.thetas = {0.0, 0.05};
  cfg.stress_deltas = {0.0, 1.0};
  cfg.learning_alpha_s = {0.8, 1.2};
  cfg.learning_costs_k = {0.0, 2.0};
  cfg.learning_alpha_sweep = {0.7, 1.0, 1.3};
  cfg.effort_draws = {0.0, 0.5, 0.999};
  return cfg;
}

}  // namespace

TEST_CASE("all hypotheses hold on a trimmed grid") {
  const TheoryReport report = verify_predictions(small_config());
  for (const HypothesisResult& r : report.results) {
    INFO(r.id << " max_violation=" << r.max_violation << " tolerance=" << r.tolerance);
    CHECK(r.pass());
    CHECK(r.passes == r.checks);
  }
  REQUIRE(report.all_pass());
  REQUIRE(report.find("H2.1ii ia wtp nonpositive") != nullptr);
  REQUIRE(report.find("B.6 wtp derivative sign") != nullptr);
}

TEST_CASE("corrupted social parameters are flagged, not hidden") {
  // negative control: an "inequality-averse" row with the comparison slope
  // sign flipped must surface as a violation with positive magnitude
  VerifyConfig cfg = small_config();
  cfg.with_oracle = false;
  cfg.ia_lambdas = {{0.5, 0.2}};
  const TheoryReport report = verify_predictions(cfg);
  REQUIRE_FALSE(report.all_pass());
  const HypothesisResult* r = report.find("H2.1ii ia wtp nonpositive");
  REQUIRE(r != nullptr);
  REQUIRE_FALSE(r->pass());
  REQUIRE(r->max_violation > 0.0);
  REQUIRE(r->passes < r->checks);
}

TEST_CASE("report records grid sizes and pass counts") {
  VerifyConfig cfg = small_config();
  cfg.with_oracle = false;
  const TheoryReport report = verify_predictions(cfg);
  const HypothesisResult* stress_row = report.find("H3.1 stress wtp formula (B.5)");
  REQUIRE(stress_row != nullptr);
  // wages(1) x costs(2) x thetas(2) x deltas(2) x beliefs(3)
  REQUIRE(stress_row->checks == 24);
  REQUIRE(stress_row->passes == 24);
}
