#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "peerinfo/oracle.hpp"

using namespace peerinfo;

TEST_CASE("grid maximizer on known forms") {
  SECTION("standard objective peaks at wage over cost") {
    const auto r = oracle_maximize([](double e) { return e - 0.05 * e * e; }, 0.0, 30.0, 1e-3);
    REQUIRE(std::abs(r.argmax - 10.0) <= 1e-3);
    REQUIRE(r.max_value == Catch::Approx(5.0).margin(1e-6));
  }
  SECTION("competitive kink at the observed average") {
    const EffortCostParams p{1.0, 0.1};
    const SocialPrefParams s{0.5, 0.2, 1.0, SocialKind::Competitive};
    const auto r = oracle_maximize(
        [&](double e) { return social_objective_exante(p, s, 13.0, e); }, 0.0, 30.0, 1e-3);
    REQUIRE(std::abs(r.argmax - 13.0) <= 1e-3);
  }
  SECTION("constant utility ties break to the left endpoint") {
    const auto r = oracle_maximize([](double) { return 0.0; }, 2.0, 5.0, 0.5);
    REQUIRE(r.argmax == 2.0);
    REQUIRE(r.max_value == 0.0);
  }
}

TEST_CASE("grid maximizer preconditions") {
  auto u = [](double e) { return -e * e; };
  REQUIRE_THROWS_AS(oracle_maximize(u, 1.0, 1.0, 0.1), ValidationError);
  REQUIRE_THROWS_AS(oracle_maximize(u, 2.0, 1.0, 0.1), ValidationError);
  REQUIRE_THROWS_AS(oracle_maximize(u, 0.0, 1.0, 0.0), ValidationError);
  REQUIRE_THROWS_AS(oracle_maximize(u, 0.0, 1.0, 1e-10), ValidationError);  // too many points
  REQUIRE_THROWS_AS(
      oracle_maximize([](double) { return std::numeric_limits<double>::quiet_NaN(); }, 0.0, 1.0,
                      0.1),
      NumericError);
}

TEST_CASE("utility spec bundles") {
  UtilitySpec u;
  u.cost = {1.0, 0.1};

  SECTION("standard ignores conditioning") {
    const auto f = make_utility(u);
    REQUIRE(f(10.0) == Catch::Approx(5.0));
  }
  SECTION("social needs its parameters and conditioning") {
    u.model = ModelKind::Social;
    REQUIRE_THROWS_AS(make_utility(u), ValidationError);
    u.social = SocialPrefParams{0.5, 0.2, 1.0, SocialKind::Competitive};
    REQUIRE_THROWS_AS(make_utility(u), ValidationError);  // missing the point average
    u.conditioning = 13.0;
    REQUIRE(make_utility(u)(13.0) ==
            Catch::Approx(social_objective_exante(u.cost, *u.social, 13.0, 13.0)));
    u.scenario = Scenario::ExPost;
    REQUIRE_THROWS_AS(make_utility(u), ValidationError);  // ex post wants beliefs
    u.conditioning = BeliefPmf::uniform_over({10.0, 20.0});
    REQUIRE_NOTHROW(make_utility(u));
  }
  SECTION("stress shifts the standard objective by a constant") {
    u.model = ModelKind::Stress;
    u.stress = StressParams{0.1, 1.0};
    u.conditioning = 20.0;
    REQUIRE(make_utility(u)(10.0) == Catch::Approx(5.0 - 2.0));
  }
  SECTION("learning scales the piece rate by the adopted productivity") {
    u.model = ModelKind::Learning;
    u.learning = LearningParams{1.0, 0.5, 1.5, 0.0, 3, 0.2, 0.0, 0.01};
    u.conditioning = 1.5;
    const auto r = oracle_maximize(u, 0.0, 30.0, 1e-3);
    REQUIRE(std::abs(r.argmax - 15.0) <= 1e-3);
  }
}
