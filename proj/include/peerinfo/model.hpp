#pragma once

#include <cmath>

#include "peerinfo/errors.hpp"

namespace peerinfo {

/// Timing of peer-information delivery relative to the effort choice.
enum class Scenario { ExAnte, ExPost };

enum class ModelKind { Standard, Social, Stress, Learning };

/// Piece rate and quadratic effort-cost curvature. Utility is measured in
/// cents, with wage in cents per row, so willingness-to-pay values are on
/// the same scale as the elicitation bonus.
struct EffortCostParams {
  double wage = 1.0;  // cents per row solved
  double cost = 0.1;  // curvature of (cost/2) * e^2
};

inline void validate(const EffortCostParams& p) {
  if (!(std::isfinite(p.wage) && p.wage > 0.0))
    throw ValidationError("EffortCostParams: wage must be positive");
  if (!(std::isfinite(p.cost) && p.cost > 0.0))
    throw ValidationError("EffortCostParams: cost must be positive");
  if (!std::isfinite(p.wage / p.cost))
    throw ValidationError("EffortCostParams: implied baseline effort is not finite");
}

/// Optimal effort with no peer information: wage/cost, exactly.
inline double effort_no_info(const EffortCostParams& p) {
  validate(p);
  return p.wage / p.cost;
}

/// Indirect utility with no peer information: wage^2 / (2 cost).
inline double value_no_info(const EffortCostParams& p) {
  validate(p);
  return p.wage * p.wage / (2.0 * p.cost);
}

}  // namespace peerinfo
