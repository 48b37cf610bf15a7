#pragma once

#include <cmath>

#include "peerinfo/belief.hpp"
#include "peerinfo/errors.hpp"
#include "peerinfo/model.hpp"

namespace peerinfo {

/// Linear stress cost theta * e_bar incurred when peer information arrives;
/// delta scales the anticipated cost in the ex post scenario.
struct StressParams {
  double theta = 0.0;
  double delta = 1.0;
};

inline void validate(const StressParams& st) {
  if (!(std::isfinite(st.theta) && st.theta >= 0.0))
    throw ValidationError("StressParams: theta must be >= 0");
  if (!(std::isfinite(st.delta) && st.delta >= 0.0 && st.delta <= 1.0))
    throw ValidationError("StressParams: delta must be in [0,1]");
}

/// Stress enters utility as a constant, so effort equals wage/cost in every
/// scenario.
inline double stress_effort(const EffortCostParams& p) { return effort_no_info(p); }

inline double stress_wtp(const EffortCostParams& p, const StressParams& st,
                         const BeliefPmf& beliefs, Scenario scenario) {
  validate(p);
  validate(st);
  const double expected_stress = st.theta * beliefs.mean();
  return scenario == Scenario::ExAnte ? -expected_stress : -st.delta * expected_stress;
}

}  // namespace peerinfo
