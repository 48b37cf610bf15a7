#pragma once

#include <cmath>
#include <concepts>
#include <functional>
#include <optional>
#include <utility>
#include <variant>

#include "peerinfo/belief.hpp"
#include "peerinfo/errors.hpp"
#include "peerinfo/learning.hpp"
#include "peerinfo/model.hpp"
#include "peerinfo/social.hpp"
#include "peerinfo/stress.hpp"

namespace peerinfo {

struct OracleResult {
  double argmax = 0.0;
  double max_value = 0.0;
};

/// Brute-force maximizer over the grid {lo, lo+step, ..., hi}. Ties resolve
/// to the smallest argmax. Independent of every closed form it is used to
/// check against.
template <class F>
  requires std::invocable<F&, double>
OracleResult oracle_maximize(F&& utility, double lo, double hi, double step) {
  if (!(lo < hi)) throw ValidationError("oracle_maximize: requires lo < hi");
  if (!(step > 0.0)) throw ValidationError("oracle_maximize: requires step > 0");
  const double n_points = (hi - lo) / step;
  if (!(n_points <= 1e8)) throw ValidationError("oracle_maximize: grid exceeds 10^8 points");
  const long long n = static_cast<long long>(std::floor(n_points + 1e-9));
  OracleResult best{lo, utility(lo)};
  if (!std::isfinite(best.max_value))
    throw NumericError("oracle_maximize: non-finite utility at grid point");
  for (long long i = 1; i <= n; ++i) {
    const double x = lo + i * step;
    const double v = utility(x);
    if (!std::isfinite(v)) throw NumericError("oracle_maximize: non-finite utility at grid point");
    if (v > best.max_value) best = {x, v};
  }
  return best;
}

/// Declarative description of an effort objective: which model, which
/// scenario, and what it conditions on (a point for ex ante averages or an
/// adopted productivity, a pmf for ex post beliefs).
struct UtilitySpec {
  ModelKind model = ModelKind::Standard;
  Scenario scenario = Scenario::ExAnte;
  EffortCostParams cost;
  std::optional<SocialPrefParams> social;
  std::optional<StressParams> stress;
  std::optional<LearningParams> learning;
  std::variant<std::monostate, double, BeliefPmf> conditioning;
};

inline std::function<double(double)> make_utility(const UtilitySpec& u) {
  validate(u.cost);
  const EffortCostParams p = u.cost;
  const double* point = std::get_if<double>(&u.conditioning);
  const BeliefPmf* beliefs = std::get_if<BeliefPmf>(&u.conditioning);

  switch (u.model) {
    case ModelKind::Standard:
      return [p](double e) { return p.wage * e - 0.5 * p.cost * e * e; };

    case ModelKind::Social: {
      if (!u.social) throw ValidationError("UtilitySpec: social model needs SocialPrefParams");
      const SocialPrefParams s = *u.social;
      if (u.scenario == Scenario::ExAnte) {
        if (!point) throw ValidationError("UtilitySpec: ex ante social needs a point average");
        const double e_bar = *point;
        return [p, s, e_bar](double e) { return social_objective_exante(p, s, e_bar, e); };
      }
      if (!beliefs) throw ValidationError("UtilitySpec: ex post social needs beliefs");
      const BeliefPmf b = *beliefs;
      return [p, s, b](double e) { return social_objective_expost(p, s, b, e); };
    }

    case ModelKind::Stress: {
      if (!u.stress) throw ValidationError("UtilitySpec: stress model needs StressParams");
      const StressParams st = *u.stress;
      if (u.scenario == Scenario::ExAnte) {
        if (!point) throw ValidationError("UtilitySpec: ex ante stress needs a point average");
        const double cost_shift = st.theta * *point;
        return [p, cost_shift](double e) { return p.wage * e - 0.5 * p.cost * e * e - cost_shift; };
      }
      if (!beliefs) throw ValidationError("UtilitySpec: ex post stress needs beliefs");
      const double cost_shift = st.delta * st.theta * beliefs->mean();
      return [p, cost_shift](double e) { return p.wage * e - 0.5 * p.cost * e * e - cost_shift; };
    }

    case ModelKind::Learning: {
      if (!u.learning) throw ValidationError("UtilitySpec: learning model needs LearningParams");
      if (!point) throw ValidationError("UtilitySpec: learning needs the adopted productivity");
      const double alpha = *point;
      return [p, alpha](double e) { return p.wage * alpha * e - 0.5 * p.cost * e * e; };
    }
  }
  throw ValidationError("UtilitySpec: unknown model");
}

inline OracleResult oracle_maximize(const UtilitySpec& u, double lo, double hi, double step) {
  return oracle_maximize(make_utility(u), lo, hi, step);
}

}  // namespace peerinfo
