#include "zonoreach/rng.hpp"

#include <cmath>
#include <numbers>

#include "zonoreach/common.hpp"

namespace zonoreach {

Rng::Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

std::uint64_t Rng::next_u64() { return engine_(); }

double Rng::uniform01() {
  // Top 53 bits -> dyadic rational in [0, 1).
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  require_param(lo <= hi, "Rng::uniform: lo must not exceed hi.");
  return lo + (hi - lo) * uniform01();
}

double Rng::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  // Box-Muller on two fresh uniforms; u1 is kept away from zero so the
  // logarithm stays finite.
  double u1 = 0.0;
  do {
    u1 = uniform01();
  } while (u1 <= 0.0);
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  cached_normal_ = r * std::sin(theta);
  has_cached_normal_ = true;
  return r * std::cos(theta);
}

int Rng::uniform_int(int lo, int hi) {
  require_param(lo <= hi, "Rng::uniform_int: lo must not exceed hi.");
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  // Rejection sampling over the largest multiple of span below 2^64.
  const std::uint64_t limit =~std::uint64_t{0} - (~std::uint64_t{0} % span + 1) % span;
  std::uint64_t draw = 0;
  do {
    draw = next_u64();
  } while (draw > limit);
  return lo + static_cast<int>(draw % span);
}

std::uint64_t Rng::derive(std::uint64_t seed, std::uint64_t stream) {
  // SplitMix64 finalizer applied to seed + golden-ratio * stream.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace zonoreach
