#pragma once

#include <array>
#include <cstdlib>
#include <map>
#include <vector>

#include "peerinfo/elicitation.hpp"
#include "peerinfo/errors.hpp"

namespace peerinfo {

enum class WorkerType {
  Type1Indifferent = 1,
  Type2StressAvoidant = 2,
  Type3Competitive = 3,
  Type4LearningResidual = 4,
};

inline int type_id(WorkerType t) { return static_cast<int>(t); }

inline WorkerType type_from_id(int id) {
  if (id < 1 || id > 4) throw ValidationError("WorkerType: id must be in 1..4");
  return static_cast<WorkerType>(id);
}

/// Probe bins summarizing the bottom, middle, and top of the performance
/// distribution, plus a zero tolerance for noisy ingested data.
struct ClassifierConfig {
  std::array<PerformanceBin, 3> probes = {PerformanceBin::Below20Plus, PerformanceBin::Within1,
                                          PerformanceBin::Above20Plus};
  int epsilon_cents = 0;
};

inline void validate(const ClassifierConfig& cfg) {
  if (!(cfg.probes[0] < cfg.probes[1] && cfg.probes[1] < cfg.probes[2]))
    throw ValidationError("ClassifierConfig: probe bins must be strictly increasing");
  if (cfg.epsilon_cents < 0)
    throw ValidationError("ClassifierConfig: epsilon_cents must be >= 0");
}

namespace detail {

// Applied in precedence order; the first matching predicate wins, which
// resolves profiles satisfying more than one pattern.
inline bool triple_is_type1(int a, int b, int c) { return a == 0 && b == 0 && c == 0; }

inline bool triple_is_type2(int a, int b, int c) {
  return a <= 0 && b <= 0 && c <= 0 && (a < 0 || b < 0 || c < 0);
}

inline bool triple_is_type3(int a, int b, int c) {
  return a <= b && b <= c && (a < b || b < c) && c > 0;
}

}  // namespace detail

/// Theory-driven typing from the ex ante profile at the three probe bins:
/// all-zero is indifferent, weakly negative with a strict dip is
/// stress-avoidant (single-peaked negative profiles pool here), increasing
/// to a strictly positive value is competitive, everything else (decreasing
/// positive, flat positive, U-shaped) is the learning/residual class.
inline WorkerType classify(const WtpSchedule& schedule, const ClassifierConfig& cfg = {}) {
  validate(cfg);
  std::array<int, 3> v{};
  for (int i = 0; i < 3; ++i) {
    int x = schedule.signed_wtp(Scenario::ExAnte, cfg.probes[i]);
    v[i] = std::abs(x) <= cfg.epsilon_cents ? 0 : x;
  }
  if (detail::triple_is_type1(v[0], v[1], v[2])) return WorkerType::Type1Indifferent;
  if (detail::triple_is_type2(v[0], v[1], v[2])) return WorkerType::Type2StressAvoidant;
  if (detail::triple_is_type3(v[0], v[1], v[2])) return WorkerType::Type3Competitive;
  return WorkerType::Type4LearningResidual;
}

/// Fraction of workers per type; sums to 1.
inline std::array<double, 4> type_shares(const std::vector<WorkerType>& types) {
  if (types.empty()) throw ValidationError("type_shares: empty input");
  std::array<double, 4> shares{};
  for (WorkerType t : types) shares[type_id(t) - 1] += 1.0;
  for (double& s : shares) s /= static_cast<double>(types.size());
  return shares;
}

}  // namespace peerinfo
