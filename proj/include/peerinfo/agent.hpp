#pragma once

#include <optional>
#include <string>

#include "peerinfo/belief.hpp"
#include "peerinfo/errors.hpp"
#include "peerinfo/learning.hpp"
#include "peerinfo/model.hpp"
#include "peerinfo/social.hpp"
#include "peerinfo/stress.hpp"

namespace peerinfo {

/// One worker's preference model and parameters. `curiosity_cents` is an
/// additive taste for information in both scenarios (zero under the four
/// baseline models); `effort_noise_sd` is the simulator's per-period effort
/// noise in rows.
struct AgentSpec {
  std::string worker_id;
  ModelKind model = ModelKind::Standard;
  EffortCostParams cost;
  std::optional<SocialPrefParams> social;
  std::optional<StressParams> stress;
  std::optional<LearningParams> learning;
  double curiosity_cents = 0.0;
  double effort_noise_sd = 0.0;
};

inline void validate(const AgentSpec& a) {
  validate(a.cost);
  if (a.model == ModelKind::Social) {
    if (!a.social) throw ValidationError("AgentSpec: social model needs SocialPrefParams");
    validate(*a.social);
  }
  if (a.model == ModelKind::Stress) {
    if (!a.stress) throw ValidationError("AgentSpec: stress model needs StressParams");
    validate(*a.stress);
  }
  if (a.model == ModelKind::Learning) {
    if (!a.learning) throw ValidationError("AgentSpec: learning model needs LearningParams");
    validate(*a.learning);
  }
  if (!(a.curiosity_cents >= 0.0)) throw ValidationError("AgentSpec: curiosity must be >= 0");
  if (!(a.effort_noise_sd >= 0.0)) throw ValidationError("AgentSpec: effort noise must be >= 0");
}

/// Label used in file formats: distinguishes the two social kinds.
inline std::string agent_model_label(const AgentSpec& a) {
  switch (a.model) {
    case ModelKind::Standard: return "standard";
    case ModelKind::Social:
      return a.social && a.social->kind == SocialKind::InequalityAverse ? "inequality_averse"
                                                                        : "competitive";
    case ModelKind::Stress: return "stress";
    case ModelKind::Learning: return "learning";
  }
  return "standard";
}

inline double agent_no_info_effort(const AgentSpec& a) {
  if (a.model == ModelKind::Learning) return learning_effort_baseline(a.cost, *a.learning).effort;
  return effort_no_info(a.cost);
}

/// True signed WTP (cents, unrounded) for information conditional on a
/// point-mass belief about the peer average. Curiosity adds uniformly.
inline double agent_wtp_at_point(const AgentSpec& a, Scenario scenario, double average) {
  double wtp = 0.0;
  switch (a.model) {
    case ModelKind::Standard: wtp = 0.0; break;
    case ModelKind::Social:
      wtp = social_wtp(a.cost, *a.social, BeliefPmf::point_mass(average), scenario);
      break;
    case ModelKind::Stress:
      wtp = stress_wtp(a.cost, *a.stress, BeliefPmf::point_mass(average), scenario);
      break;
    case ModelKind::Learning:
      wtp = learning_wtp(a.cost, *a.learning, BeliefPmf::point_mass(average), scenario);
      break;
  }
  return wtp + a.curiosity_cents;
}

/// Period-2 effort when the average is revealed before the choice.
/// The learning model consumes `draw` for its strategy realization.
inline double agent_effort_exante(const AgentSpec& a, double e_bar_true, double draw) {
  switch (a.model) {
    case ModelKind::Standard: return effort_no_info(a.cost);
    case ModelKind::Social: return social_effort_exante(a.cost, *a.social, e_bar_true);
    case ModelKind::Stress: return stress_effort(a.cost);
    case ModelKind::Learning:
      return learning_effort_exante(a.cost, *a.learning, e_bar_true, draw).effort;
  }
  return effort_no_info(a.cost);
}

/// Period-2 effort when the average arrives only after the task.
inline double agent_effort_expost(const AgentSpec& a, const BeliefPmf& beliefs) {
  switch (a.model) {
    case ModelKind::Standard: return effort_no_info(a.cost);
    case ModelKind::Social: return social_effort_expost(a.cost, *a.social, beliefs);
    case ModelKind::Stress: return stress_effort(a.cost);
    case ModelKind::Learning: return learning_effort_baseline(a.cost, *a.learning).effort;
  }
  return effort_no_info(a.cost);
}

}  // namespace peerinfo
