#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>

#include "peerinfo/agent.hpp"
#include "peerinfo/errors.hpp"
#include "peerinfo/model.hpp"

namespace peerinfo {

/// The nine contingent performance levels, stated relative to the peer
/// average and ordered from far below to far above.
enum class PerformanceBin {
  Below20Plus = 0,
  Below11to20,
  Below6to10,
  Below2to5,
  Within1,
  Above2to5,
  Above6to10,
  Above11to20,
  Above20Plus,
};

inline constexpr int kNumBins = 9;

/// Representative offset, in rows, of own performance minus the average for
/// each bin: interior bins use midpoints, the open-ended bins use +/-25.
inline constexpr std::array<double, kNumBins> kBinOffsets = {-25.0, -15.5, -8.0, -3.5, 0.0,
                                                             3.5,   8.0,   15.5, 25.0};

inline double bin_offset(PerformanceBin b) { return kBinOffsets[static_cast<int>(b)]; }

/// 1-based bin id used in file formats.
inline int bin_id(PerformanceBin b) { return static_cast<int>(b) + 1; }

inline PerformanceBin bin_from_id(int id) {
  if (id < 1 || id > kNumBins) throw ValidationError("PerformanceBin: id must be in 1..9");
  return static_cast<PerformanceBin>(id - 1);
}

/// Bins the integer gap between own rows solved and the rounded true average.
inline PerformanceBin realized_bin(int e1, double e_bar_true) {
  if (e1 < 0) throw ValidationError("realized_bin: e1 must be >= 0");
  if (!(std::isfinite(e_bar_true) && e_bar_true >= 0.0))
    throw ValidationError("realized_bin: e_bar_true must be finite and >= 0");
  const long d = e1 - std::lround(e_bar_true);
  const long mag = std::labs(d);
  int side;  // distance class: 0 = within 1, then 2-5, 6-10, 11-20, 21+
  if (mag <= 1) return PerformanceBin::Within1;
  if (mag <= 5) side = 1;
  else if (mag <= 10) side = 2;
  else if (mag <= 20) side = 3;
  else side = 4;
  return d < 0 ? static_cast<PerformanceBin>(4 - side) : static_cast<PerformanceBin>(4 + side);
}

/// Signed WTP per scenario and bin, in integer cents of the 50-cent bonus.
/// Positive means pay to receive, negative pay to avoid; zero canonically
/// means "prefer to receive at zero cents".
struct WtpSchedule {
  std::array<int, kNumBins> exante{};
  std::array<int, kNumBins> expost{};

  int signed_wtp(Scenario s, PerformanceBin b) const {
    return (s == Scenario::ExAnte ? exante : expost)[static_cast<int>(b)];
  }
  bool prefer_info(Scenario s, PerformanceBin b) const { return signed_wtp(s, b) >= 0; }
  int wtp_cents(Scenario s, PerformanceBin b) const { return std::abs(signed_wtp(s, b)); }

  static int compose_signed(bool prefer, int cents) {
    if (cents < 0 || cents > 50) throw ValidationError("WtpSchedule: cents must be in [0,50]");
    return prefer ? cents : -cents;
  }
};

/// Builds an agent's true contingent schedule. Each bin states own
/// performance relative to the average, so conditional on the bin the
/// implied average is the baseline anchor minus the bin offset (floored at
/// zero), believed as a point mass. Values are truncated toward zero to
/// whole cents and clamped to the bonus range.
inline WtpSchedule build_wtp_schedule(const AgentSpec& agent, double e_base) {
  validate(agent);
  if (!(std::isfinite(e_base) && e_base >= 0.0))
    throw ValidationError("build_wtp_schedule: e_base must be finite and >= 0");
  WtpSchedule schedule;
  for (int i = 0; i < kNumBins; ++i) {
    const double implied_average = std::max(0.0, e_base - kBinOffsets[i]);
    for (Scenario s : {Scenario::ExAnte, Scenario::ExPost}) {
      const double raw = agent_wtp_at_point(agent, s, implied_average);
      const double truncated = std::clamp(std::trunc(raw), -50.0, 50.0);
      (s == Scenario::ExAnte ? schedule.exante : schedule.expost)[i] =
          static_cast<int>(truncated);
    }
  }
  return schedule;
}

inline WtpSchedule build_wtp_schedule(const AgentSpec& agent) {
  return build_wtp_schedule(agent, agent_no_info_effort(agent));
}

struct BdmOutcome {
  bool implemented = false;     // was the stated choice enacted
  int payment_cents = 0;        // amount paid out of the bonus
  int final_bonus_cents = 50;   // 50 minus the payment
  bool receives_info = false;
};

/// Resolves one choice through the price mechanism. With the direct coin the
/// stated choice is enacted for free; otherwise the choice is implemented at
/// the drawn price only when the draw does not exceed the stated amount, and
/// a failed draw flips the outcome at no cost.
inline BdmOutcome bdm_resolve(bool prefer_info, int wtp_cents, bool coin_direct, int draw_cents) {
  if (wtp_cents < 0 || wtp_cents > 50)
    throw ValidationError("bdm_resolve: wtp_cents must be in [0,50]");
  if (draw_cents < 0 || draw_cents > 50)
    throw ValidationError("bdm_resolve: draw_cents must be in [0,50]");
  BdmOutcome out;
  if (coin_direct) {
    out.implemented = true;
    out.payment_cents = 0;
    out.receives_info = prefer_info;
  } else if (draw_cents <= wtp_cents) {
    out.implemented = true;
    out.payment_cents = draw_cents;
    out.receives_info = prefer_info;
  } else {
    out.implemented = false;
    out.payment_cents = 0;
    out.receives_info = !prefer_info;
  }
  out.final_bonus_cents = 50 - out.payment_cents;
  return out;
}

enum class TreatmentArm { Control, ExAnteInfo, ExPostInfo, ChooseYourInfo };

/// Maps a uniform draw to the 30/30/30/10 arm split.
inline TreatmentArm assign_arm(double u) {
  if (!(u >= 0.0 && u < 1.0)) throw ValidationError("assign_arm: u must be in [0,1)");
  if (u < 0.3) return TreatmentArm::Control;
  if (u < 0.6) return TreatmentArm::ExAnteInfo;
  if (u < 0.9) return TreatmentArm::ExPostInfo;
  return TreatmentArm::ChooseYourInfo;
}

}  // namespace peerinfo
