#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

#include "peerinfo/errors.hpp"

namespace peerinfo {

// Counter-based random substreams. Every stream is a pure function of
// (master seed, stream name, index, counter), so components can be re-run
// in isolation and simulations parallelize without shared state.

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace detail

/// Deterministic random stream addressed by (seed, name, index).
class RandomStream {
public:
  RandomStream(std::uint64_t seed, std::string_view name, std::uint64_t index = 0)
      : state_(detail::splitmix64(detail::splitmix64(seed ^ detail::fnv1a(name)) ^ index)) {}

  std::uint64_t next_u64() {
    state_ = detail::splitmix64(state_ ^ counter_++);
    return state_;
  }

  /// Uniform double in [0, 1).
  double uniform() {
    // 53 significant bits, exactly representable.
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in {0, ..., n-1}.
  std::uint64_t uniform_int(std::uint64_t n) {
    if (n == 0) throw ValidationError("uniform_int: n must be positive");
    // Rejection sampling keeps the distribution exact.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = next_u64();
    while (v >= limit) v = next_u64();
    return v % n;
  }

  /// Standard normal via Box-Muller; consumes two uniforms.
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

private:
  std::uint64_t state_;
  std::uint64_t counter_ = 0;
};

}  // namespace peerinfo
