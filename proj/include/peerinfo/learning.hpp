#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "peerinfo/belief.hpp"
#include "peerinfo/errors.hpp"
#include "peerinfo/model.hpp"

namespace peerinfo {

/// Strategy-search model. The worker produces alpha_s rows per unit of
/// effort; paying `search_cost` reveals a draw of an alternative strategy's
/// productivity from a posterior that shifts up with observed peer output.
struct LearningParams {
  double alpha_s = 1.0;       // current strategy productivity
  double alpha_lo = 0.5;      // productivity grid bounds
  double alpha_hi = 1.5;
  double search_cost = 1.0;   // fixed cost K, utility cents
  int grid_m = 11;            // posterior discretization points
  double kernel_sigma = 0.2;  // Gaussian kernel width
  double loc_a = 0.0;         // posterior location mu(y_bar) = loc_a + loc_b * y_bar
  double loc_b = 0.05;
};

inline void validate(const LearningParams& l) {
  if (!(std::isfinite(l.alpha_s) && l.alpha_s > 0.0))
    throw ValidationError("LearningParams: alpha_s must be positive");
  if (!(l.alpha_lo < l.alpha_hi))
    throw ValidationError("LearningParams: alpha_lo must be below alpha_hi");
  if (!(l.alpha_lo <= l.alpha_s && l.alpha_s <= l.alpha_hi))
    throw ValidationError("LearningParams: alpha_s must lie in [alpha_lo, alpha_hi]");
  if (l.grid_m < 2) throw ValidationError("LearningParams: grid_m must be >= 2");
  if (!(std::isfinite(l.kernel_sigma) && l.kernel_sigma > 0.0))
    throw ValidationError("LearningParams: kernel_sigma must be positive");
  if (!(std::isfinite(l.loc_b) && l.loc_b > 0.0))
    throw ValidationError("LearningParams: loc_b must be positive");
  if (!(std::isfinite(l.loc_a)))
    throw ValidationError("LearningParams: loc_a must be finite");
  if (!(std::isfinite(l.search_cost) && l.search_cost >= 0.0))
    throw ValidationError("LearningParams: search_cost must be >= 0");
}

/// Posterior over alternative-strategy productivity after observing average
/// peer output y_bar: Gaussian kernel weights on the uniform alpha grid,
/// centered at loc_a + loc_b * y_bar. A location shift of the log-concave
/// kernel makes the posterior first-order stochastically increasing in y_bar.
inline BeliefPmf learning_posterior(const LearningParams& l, double y_bar) {
  validate(l);
  if (!(std::isfinite(y_bar) && y_bar >= 0.0))
    throw ValidationError("learning_posterior: y_bar must be finite and nonnegative");
  const double mu = l.loc_a + l.loc_b * y_bar;
  const double spacing = (l.alpha_hi - l.alpha_lo) / (l.grid_m - 1);
  std::vector<double> grid(l.grid_m), logw(l.grid_m);
  double max_logw = -HUGE_VAL;
  for (int i = 0; i < l.grid_m; ++i) {
    grid[i] = l.alpha_lo + i * spacing;
    const double z = grid[i] - mu;
    logw[i] = -z * z / (2.0 * l.kernel_sigma * l.kernel_sigma);
    max_logw = std::max(max_logw, logw[i]);
  }
  // Shift by the max before exponentiating so far-off locations still
  // normalize instead of underflowing to all-zero weights.
  std::vector<double> probs(l.grid_m);
  double total = 0.0;
  for (int i = 0; i < l.grid_m; ++i) {
    probs[i] = std::exp(logw[i] - max_logw);
    total += probs[i];
  }
  for (double& p : probs) p /= total;
  return BeliefPmf(std::move(grid), std::move(probs));
}

/// Expected utility of paying the search cost after observing y_bar: better
/// draws are adopted, worse ones leave the current strategy in place.
inline double learning_value_of_search(const EffortCostParams& p, const LearningParams& l,
                                       double y_bar) {
  validate(p);
  const BeliefPmf posterior = learning_posterior(l, y_bar);
  const double scale = p.wage * p.wage / (2.0 * p.cost);
  const double retain_value = scale * l.alpha_s * l.alpha_s;
  double value = 0.0, retain_prob = 0.0;
  const auto& alphas = posterior.support();
  const auto& probs = posterior.probs();
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (alphas[i] > l.alpha_s)
      value += probs[i] * scale * alphas[i] * alphas[i];
    else
      retain_prob += probs[i];
  }
  return value + retain_prob * retain_value - l.search_cost;
}

inline double learning_value_no_info(const EffortCostParams& p, const LearningParams& l) {
  validate(p);
  validate(l);
  return p.wage * p.wage * l.alpha_s * l.alpha_s / (2.0 * p.cost);
}

/// WTP for peer information under the learning model. Ex ante the worker
/// can act on the information (search when it looks worthwhile), so the
/// value is the expected positive part of the search surplus; ex post the
/// information arrives too late to matter and WTP is exactly zero.
inline double learning_wtp(const EffortCostParams& p, const LearningParams& l,
                           const BeliefPmf& beliefs_y, Scenario scenario) {
  validate(p);
  validate(l);
  if (scenario == Scenario::ExPost) return 0.0;
  const double base = learning_value_no_info(p, l);
  return beliefs_y.expectation([&](double y_bar) {
    return std::max(learning_value_of_search(p, l, y_bar) - base, 0.0);
  });
}

struct LearningEffort {
  double effort = 0.0;
  double adopted_alpha = 0.0;
};

/// Baseline effort with the current strategy; also the ex post choice.
inline LearningEffort learning_effort_baseline(const EffortCostParams& p,
                                               const LearningParams& l) {
  validate(p);
  validate(l);
  return {p.wage * l.alpha_s / p.cost, l.alpha_s};
}

/// Ex ante effort after observing y_bar. If searching beats staying put, a
/// strategy draw is realized by inverse-CDF at `draw` and adopted only when
/// it improves on the current productivity.
inline LearningEffort learning_effort_exante(const EffortCostParams& p, const LearningParams& l,
                                             double y_bar, double draw) {
  validate(p);
  validate(l);
  if (!(draw >= 0.0 && draw < 1.0))
    throw ValidationError("learning_effort_exante: draw must be in [0,1)");
  const double base = learning_value_no_info(p, l);
  if (learning_value_of_search(p, l, y_bar) < base) return learning_effort_baseline(p, l);
  const double alpha_new = learning_posterior(l, y_bar).quantile(draw);
  const double adopted = std::max(alpha_new, l.alpha_s);
  return {p.wage * adopted / p.cost, adopted};
}

}  // namespace peerinfo
