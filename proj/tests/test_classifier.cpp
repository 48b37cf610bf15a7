#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "peerinfo/classifier.hpp"
#include "peerinfo/elicitation.hpp"
#include "peerinfo/rng.hpp"

using namespace peerinfo;

namespace {

WtpSchedule probe_schedule(int a, int b, int c) {
  WtpSchedule s;
  s.exante[0] = a;
  s.exante[4] = b;
  s.exante[8] = c;
  return s;
}

}  // namespace

TEST_CASE("type definitions at the probes") {
  REQUIRE(classify(probe_schedule(0, 0, 0)) == WorkerType::Type1Indifferent);
  REQUIRE(classify(probe_schedule(-5, -5, -5)) == WorkerType::Type2StressAvoidant);
  REQUIRE(classify(probe_schedule(-5, 0, 10)) == WorkerType::Type3Competitive);
  REQUIRE(classify(probe_schedule(10, 0, 10)) == WorkerType::Type4LearningResidual);

  // single-peaked negative profiles pool into the stress-avoidant type
  REQUIRE(classify(probe_schedule(-10, -2, -8)) == WorkerType::Type2StressAvoidant);
  // decreasing positive profiles land in the learning/residual type
  REQUIRE(classify(probe_schedule(12, 5, 0)) == WorkerType::Type4LearningResidual);
  // flat positive is residual too: no strict increase
  REQUIRE(classify(probe_schedule(5, 5, 5)) == WorkerType::Type4LearningResidual);
  // weakly increasing into zero stays stress-avoidant by precedence
  REQUIRE(classify(probe_schedule(-5, 0, 0)) == WorkerType::Type2StressAvoidant);
}

TEST_CASE("every probe triple maps to exactly one type") {
  const std::vector<int> axis = {-50, -17, -5, -1, 0, 1, 5, 17, 50};
  auto check_one = [](int a, int b, int c) {
    int matches = 0;
    if (detail::triple_is_type1(a, b, c)) ++matches;
    if (detail::triple_is_type2(a, b, c)) ++matches;
    if (detail::triple_is_type3(a, b, c)) ++matches;
    // residual catches anything, so exhaustiveness means no triple needs it
    // twice; mutual exclusivity is precedence plus this overlap census
    const WorkerType t = classify(probe_schedule(a, b, c));
    if (matches == 0) REQUIRE(t == WorkerType::Type4LearningResidual);
    REQUIRE((type_id(t) >= 1 && type_id(t) <= 4));
  };
  for (int a : axis)
    for (int b : axis)
      for (int c : axis) check_one(a, b, c);
  for (int a : {-50, 50})
    for (int b : {-50, 50})
      for (int c : {-50, 50}) check_one(a, b, c);
}

TEST_CASE("classification ignores ex post entries and non-probe bins") {
  RandomStream rng(11, "classifier-noise");
  WtpSchedule s = probe_schedule(-5, 0, 10);
  const WorkerType base = classify(s);
  for (int trial = 0; trial < 200; ++trial) {
    WtpSchedule mutated = s;
    for (int b = 0; b < kNumBins; ++b) {
      mutated.expost[b] = static_cast<int>(rng.uniform_int(101)) - 50;
      if (b != 0 && b != 4 && b != 8)
        mutated.exante[b] = static_cast<int>(rng.uniform_int(101)) - 50;
    }
    REQUIRE(classify(mutated) == base);
  }
}

TEST_CASE("lifting the minimum past the tolerance breaks the stress pattern") {
  // any shift k > epsilon - min(probes) pushes some probe strictly positive
  const std::vector<int> axis = {-50, -20, -3, -1, 0};
  for (int a : axis)
    for (int b : axis)
      for (int c : axis) {
        if (classify(probe_schedule(a, b, c)) != WorkerType::Type2StressAvoidant) continue;
        const int lift = -std::min({a, b, c});
        for (int k : {lift + 1, lift + 5, lift + 60}) {
          auto clamp50 = [](int v) { return std::min(50, std::max(-50, v)); };
          const WorkerType shifted =
              classify(probe_schedule(clamp50(a + k), clamp50(b + k), clamp50(c + k)));
          REQUIRE(shifted != WorkerType::Type2StressAvoidant);
          REQUIRE(shifted != WorkerType::Type1Indifferent);
        }
      }
}

TEST_CASE("epsilon tolerance zeroes small entries") {
  ClassifierConfig cfg;
  cfg.epsilon_cents = 2;
  REQUIRE(classify(probe_schedule(-2, 1, 2), cfg) == WorkerType::Type1Indifferent);
  REQUIRE(classify(probe_schedule(-3, 1, 2), cfg) == WorkerType::Type2StressAvoidant);
}

TEST_CASE("alternative probe bins") {
  ClassifierConfig cfg;
  cfg.probes = {PerformanceBin::Below11to20, PerformanceBin::Within1,
                PerformanceBin::Above11to20};
  WtpSchedule s;
  s.exante[1] = -4;
  s.exante[4] = 0;
  s.exante[7] = 9;
  REQUIRE(classify(s, cfg) == WorkerType::Type3Competitive);

  ClassifierConfig bad;
  bad.probes = {PerformanceBin::Within1, PerformanceBin::Within1, PerformanceBin::Above20Plus};
  REQUIRE_THROWS_AS(classify(s, bad), ValidationError);
}

TEST_CASE("generating models classify to their own types") {
  AgentSpec a;
  a.cost = {1.0, 0.04};

  a.model = ModelKind::Standard;
  REQUIRE(classify(build_wtp_schedule(a)) == WorkerType::Type1Indifferent);

  a.model = ModelKind::Stress;
  a.stress = StressParams{0.4, 0.2};
  REQUIRE(classify(build_wtp_schedule(a)) == WorkerType::Type2StressAvoidant);

  a.model = ModelKind::Social;
  a.stress.reset();
  a.social = SocialPrefParams{0.6, 0.4, 1.0, SocialKind::Competitive};
  REQUIRE(classify(build_wtp_schedule(a)) == WorkerType::Type3Competitive);

  a.social = SocialPrefParams{0.6, -0.3, 1.0, SocialKind::InequalityAverse};
  REQUIRE(classify(build_wtp_schedule(a)) == WorkerType::Type2StressAvoidant);

  a.model = ModelKind::Learning;
  a.social.reset();
  a.learning = LearningParams{1.0, 0.5, 1.6, 1.0, 13, 0.2, 0.4, 0.025};
  REQUIRE(classify(build_wtp_schedule(a)) == WorkerType::Type4LearningResidual);
}

TEST_CASE("type shares") {
  std::vector<WorkerType> types(60, WorkerType::Type1Indifferent);
  types.resize(100, WorkerType::Type3Competitive);
  const auto shares = type_shares(types);
  REQUIRE(shares[0] == Catch::Approx(0.6));
  REQUIRE(shares[1] == 0.0);
  REQUIRE(shares[2] == Catch::Approx(0.4));
  REQUIRE(shares[0] + shares[1] + shares[2] + shares[3] == Catch::Approx(1.0).margin(1e-12));
  REQUIRE_THROWS_AS(type_shares({}), ValidationError);
}
