#pragma once

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "peerinfo/classifier.hpp"
#include "peerinfo/errors.hpp"
#include "peerinfo/simulator.hpp"

namespace peerinfo {

/// Information assignment under a policy: a timing or nothing.
using PolicyAssignment = std::optional<Scenario>;

/// Uniform policies assign every worker the same timing; a targeted policy
/// maps each worker type to its own timing (or to no information).
struct Policy {
  enum class Kind { UniformExAnte, UniformExPost, Targeted };
  Kind kind = Kind::UniformExAnte;
  std::map<WorkerType, PolicyAssignment> targeted;  // total over the four types

  static Policy uniform_exante() { return {Kind::UniformExAnte, {}}; }
  static Policy uniform_expost() { return {Kind::UniformExPost, {}}; }
  static Policy targeted_map(std::map<WorkerType, PolicyAssignment> map) {
    return {Kind::Targeted, std::move(map)};
  }

  PolicyAssignment assignment_for(WorkerType t) const {
    switch (kind) {
      case Kind::UniformExAnte: return Scenario::ExAnte;
      case Kind::UniformExPost: return Scenario::ExPost;
      case Kind::Targeted: {
        auto it = targeted.find(t);
        if (it == targeted.end())
          throw ValidationError("Policy: targeted map must cover all four types");
        return it->second;
      }
    }
    return std::nullopt;
  }

  std::string name() const {
    switch (kind) {
      case Kind::UniformExAnte: return "uniform_exante";
      case Kind::UniformExPost: return "uniform_expost";
      case Kind::Targeted: return "targeted";
    }
    return "unknown";
  }
};

inline void validate(const Policy& p) {
  if (p.kind != Policy::Kind::Targeted) return;
  for (int t = 1; t <= 4; ++t)
    if (!p.targeted.count(type_from_id(t)))
      throw ValidationError("Policy: targeted map must cover all four types");
}

/// The paper-style targeting rule: everyone gets information ex ante except
/// the stress-avoidant type, which gets it ex post.
inline Policy targeted_type2_expost() {
  return Policy::targeted_map({{WorkerType::Type1Indifferent, Scenario::ExAnte},
                               {WorkerType::Type2StressAvoidant, Scenario::ExPost},
                               {WorkerType::Type3Competitive, Scenario::ExAnte},
                               {WorkerType::Type4LearningResidual, Scenario::ExAnte}});
}

/// A worker's realized payoff from an assignment is their elicited signed
/// WTP at their realized performance bin; no information pays zero. It uses
/// stated preferences, not period-2 outcomes, so it is insensitive to the
/// experimental arm.
inline double realized_payoff(const WorkerRecord& record, PolicyAssignment assigned) {
  if (!assigned) return 0.0;
  return static_cast<double>(record.schedule.signed_wtp(*assigned, record.bin));
}

struct PolicyOutcome {
  std::string policy;
  double mean_payoff = 0.0;  // cents
  std::size_t n = 0;
  std::array<double, 4> per_type_mean{};
  std::array<std::size_t, 4> per_type_n{};
};

inline PolicyOutcome evaluate_policy(const std::vector<WorkerRecord>& records,
                                     const Policy& policy) {
  validate(policy);
  if (records.empty()) throw ValidationError("evaluate_policy: no records");
  PolicyOutcome out;
  out.policy = policy.name();
  std::array<double, 4> totals{};
  double grand_total = 0.0;
  for (const WorkerRecord& r : records) {
    const double payoff = realized_payoff(r, policy.assignment_for(r.type));
    const int t = type_id(r.type) - 1;
    totals[t] += payoff;
    ++out.per_type_n[t];
    grand_total += payoff;
    ++out.n;
  }
  out.mean_payoff = grand_total / static_cast<double>(out.n);
  for (int t = 0; t < 4; ++t)
    out.per_type_mean[t] = out.per_type_n[t] ? totals[t] / out.per_type_n[t] : 0.0;
  return out;
}

/// Percent change of the target policy's mean payoff over the baseline's.
/// Undefined when the baseline mean is not positive.
inline double welfare_gain(const PolicyOutcome& target, const PolicyOutcome& baseline) {
  if (baseline.mean_payoff == 0.0)
    throw ValidationError("welfare_gain: baseline mean payoff is zero; gain undefined");
  return 100.0 * (target.mean_payoff - baseline.mean_payoff) / baseline.mean_payoff;
}

}  // namespace peerinfo
