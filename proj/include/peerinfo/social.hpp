#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "peerinfo/belief.hpp"
#include "peerinfo/errors.hpp"
#include "peerinfo/model.hpp"

namespace peerinfo {

enum class SocialKind { Competitive, InequalityAverse };

/// Piecewise-linear social comparison term: slope `lambda1` when earning
/// less than the average, `lambda2` when earning more. `delta` scales the
/// term in the ex post scenario.
struct SocialPrefParams {
  double lambda1 = 0.5;
  double lambda2 = 0.2;
  double delta = 1.0;
  SocialKind kind = SocialKind::Competitive;
};

/// Full invariant check, including kind consistency. The math below only
/// needs lambda1 >= lambda2 > -1 (concavity), which it checks itself, so a
/// mislabeled kind still evaluates; this is what lets the verification
/// harness flag a corrupted parameter set instead of refusing to run it.
inline void validate(const SocialPrefParams& s) {
  if (!(std::isfinite(s.lambda1) && std::isfinite(s.lambda2) && std::isfinite(s.delta)))
    throw ValidationError("SocialPrefParams: parameters must be finite");
  if (s.delta < 0.0) throw ValidationError("SocialPrefParams: delta must be >= 0");
  if (s.kind == SocialKind::Competitive) {
    if (!(s.lambda1 >= s.lambda2 && s.lambda2 > 0.0))
      throw ValidationError("SocialPrefParams: competitive requires lambda1 >= lambda2 > 0");
  } else {
    if (!(s.lambda1 > 0.0 && s.lambda2 > -1.0 && s.lambda2 < 0.0 && s.lambda1 >= -s.lambda2))
      throw ValidationError(
          "SocialPrefParams: inequality-averse requires lambda1 > 0, -1 < lambda2 < 0, "
          "lambda1 >= |lambda2|");
  }
}

namespace detail {

inline void require_concave(const SocialPrefParams& s) {
  if (!(std::isfinite(s.lambda1) && std::isfinite(s.lambda2)))
    throw ValidationError("SocialPrefParams: parameters must be finite");
  if (!(s.lambda1 >= s.lambda2 && s.lambda2 > -1.0))
    throw ValidationError("SocialPrefParams: requires lambda1 >= lambda2 > -1");
  if (s.delta < 0.0) throw ValidationError("SocialPrefParams: delta must be >= 0");
}

inline double comparison_term(const SocialPrefParams& s, double earnings_gap) {
  return earnings_gap <= 0.0 ? s.lambda1 * earnings_gap : s.lambda2 * earnings_gap;
}

}  // namespace detail

/// Objective when the average is known before the effort choice.
inline double social_objective_exante(const EffortCostParams& p, const SocialPrefParams& s,
                                      double e_bar, double e) {
  return p.wage * e - 0.5 * p.cost * e * e +
         detail::comparison_term(s, p.wage * (e - e_bar));
}

/// Optimal ex ante effort: kinked closed form around the observed average.
/// Below the lower kink the worker out-works the average, inside the kink
/// interval they bunch at the average, above it they settle at the upper kink.
inline double social_effort_exante(const EffortCostParams& p, const SocialPrefParams& s,
                                   double e_bar) {
  validate(p);
  detail::require_concave(s);
  if (!(std::isfinite(e_bar) && e_bar >= 0.0))
    throw ValidationError("social_effort_exante: e_bar must be finite and nonnegative");
  const double lower = p.wage * (1.0 + s.lambda2) / p.cost;
  const double upper = p.wage * (1.0 + s.lambda1) / p.cost;
  if (e_bar < lower) return lower;
  if (e_bar <= upper) return e_bar;
  return upper;
}

/// Indirect utility at the ex ante optimum, in closed form.
inline double social_value_exante(const EffortCostParams& p, const SocialPrefParams& s,
                                  double e_bar) {
  validate(p);
  detail::require_concave(s);
  const double w = p.wage, c = p.cost;
  const double lower = w * (1.0 + s.lambda2) / c;
  const double upper = w * (1.0 + s.lambda1) / c;
  if (e_bar < lower) return w * w * (1.0 + s.lambda2) * (1.0 + s.lambda2) / (2.0 * c) -
                            s.lambda2 * w * e_bar;
  if (e_bar <= upper) return w * e_bar - 0.5 * c * e_bar * e_bar;
  return w * w * (1.0 + s.lambda1) * (1.0 + s.lambda1) / (2.0 * c) - s.lambda1 * w * e_bar;
}

/// Expected objective when effort is chosen before the average is revealed;
/// the comparison term is scaled by delta and averaged over beliefs.
inline double social_objective_expost(const EffortCostParams& p, const SocialPrefParams& s,
                                      const BeliefPmf& beliefs, double e) {
  double expected = beliefs.expectation(
      [&](double e_bar) { return detail::comparison_term(s, p.wage * (e - e_bar)); });
  return p.wage * e - 0.5 * p.cost * e * e + s.delta * expected;
}

/// Optimal ex post effort. The objective is strictly concave and quadratic
/// between the belief support points, so the exact maximizer is found by
/// enumerating every kink and every piece's clamped vertex. Ties resolve to
/// the smallest effort.
inline double social_effort_expost(const EffortCostParams& p, const SocialPrefParams& s,
                                   const BeliefPmf& beliefs) {
  validate(p);
  detail::require_concave(s);
  const double lo = 0.0;
  const double slope_boost = std::max({s.lambda1, s.lambda2, 0.0});
  const double hi = (p.wage / p.cost) * (1.0 + s.delta * slope_boost) + 1.0;
  const auto g = [&](double e) { return social_objective_expost(p, s, beliefs, e); };

  double best_e = 0.0;
  double best_v = -HUGE_VAL;
  const auto consider = [&](double e) {
    if (!(e >= lo && e <= hi)) return;
    const double v = g(e);
    if (v > best_v || (v == best_v && e < best_e)) {
      best_v = v;
      best_e = e;
    }
  };
  const auto& support = beliefs.support();
  const auto& probs = beliefs.probs();
  double mass_below = 0.0;  // belief mass strictly below the current piece
  for (std::size_t j = 0; j <= support.size(); ++j) {
    const double piece_lo = j == 0 ? lo : support[j - 1];
    const double piece_hi = j == support.size() ? hi : support[j];
    if (piece_lo <= piece_hi) {
      const double gain = s.delta * (s.lambda2 * mass_below + s.lambda1 * (1.0 - mass_below));
      consider(std::clamp((p.wage / p.cost) * (1.0 + gain), piece_lo, piece_hi));
    }
    if (j < support.size()) {
      consider(support[j]);
      mass_below += probs[j];
    }
  }
  return best_e;
}

inline double social_value_expost(const EffortCostParams& p, const SocialPrefParams& s,
                                  const BeliefPmf& beliefs) {
  return social_objective_expost(p, s, beliefs, social_effort_expost(p, s, beliefs));
}

/// Willingness-to-pay for peer information under the social preferences
/// model, in utility cents. Ex ante it is the expected gain of the kinked
/// indirect utility over the no-information value; ex post it is the value
/// of the expected objective at the ex post optimum, minus the same base.
inline double social_wtp(const EffortCostParams& p, const SocialPrefParams& s,
                         const BeliefPmf& beliefs, Scenario scenario) {
  validate(p);
  detail::require_concave(s);
  const double base = value_no_info(p);
  if (scenario == Scenario::ExAnte) {
    double expected =
        beliefs.expectation([&](double e_bar) { return social_value_exante(p, s, e_bar); });
    return expected - base;
  }
  return social_value_expost(p, s, beliefs) - base;
}

}  // namespace peerinfo
