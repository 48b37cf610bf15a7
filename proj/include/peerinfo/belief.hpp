#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "peerinfo/errors.hpp"

namespace peerinfo {

/// Discrete probability mass function over nonnegative values (average peer
/// effort or output). Support is strictly increasing; probabilities sum to 1.
class BeliefPmf {
public:
  BeliefPmf(std::vector<double> support, std::vector<double> probs)
      : support_(std::move(support)), probs_(std::move(probs)) {
    if (support_.empty()) throw ValidationError("BeliefPmf: empty support");
    if (support_.size() != probs_.size())
      throw ValidationError("BeliefPmf: support/probs length mismatch");
    double total = 0.0;
    for (std::size_t i = 0; i < support_.size(); ++i) {
      if (!std::isfinite(support_[i]) || support_[i] < 0.0)
        throw ValidationError("BeliefPmf: support values must be finite and nonnegative");
      if (i > 0 && support_[i] <= support_[i - 1])
        throw ValidationError("BeliefPmf: support must be strictly increasing");
      if (!std::isfinite(probs_[i]) || probs_[i] < 0.0)
        throw ValidationError("BeliefPmf: probabilities must be finite and nonnegative");
      total += probs_[i];
    }
    if (std::abs(total - 1.0) > 1e-9)
      throw ValidationError("BeliefPmf: probabilities must sum to 1 within 1e-9");
  }

  static BeliefPmf point_mass(double value) { return BeliefPmf({value}, {1.0}); }

  static BeliefPmf uniform_over(std::vector<double> support) {
    std::vector<double> probs(support.size(), support.empty() ? 0.0 : 1.0 / support.size());
    return BeliefPmf(std::move(support), std::move(probs));
  }

  std::size_t size() const { return support_.size(); }
  const std::vector<double>& support() const { return support_; }
  const std::vector<double>& probs() const { return probs_; }

  double mean() const {
    double m = 0.0;
    for (std::size_t i = 0; i < support_.size(); ++i) m += support_[i] * probs_[i];
    return m;
  }

  template <class F>
  double expectation(F&& f) const {
    double m = 0.0;
    for (std::size_t i = 0; i < support_.size(); ++i) m += f(support_[i]) * probs_[i];
    return m;
  }

  /// Cumulative probability of support values <= x.
  double cdf(double x) const {
    double c = 0.0;
    for (std::size_t i = 0; i < support_.size() && support_[i] <= x; ++i) c += probs_[i];
    return c;
  }

  /// Right-continuous inverse CDF: smallest support value whose cumulative
  /// probability exceeds u, for u in [0, 1).
  double quantile(double u) const {
    if (!(u >= 0.0 && u < 1.0)) throw ValidationError("BeliefPmf::quantile: u must be in [0,1)");
    double c = 0.0;
    for (std::size_t i = 0; i < support_.size(); ++i) {
      c += probs_[i];
      if (c > u) return support_[i];
    }
    return support_.back();  // guards against rounding in the partial sums
  }

private:
  std::vector<double> support_;
  std::vector<double> probs_;
};

}  // namespace peerinfo
