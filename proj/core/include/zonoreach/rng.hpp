#pragma once

#include <cstdint>
#include <random>

namespace zonoreach {

/// Deterministic random number generator.
///
/// Wraps std::mt19937_64 (whose output sequence is fixed by the standard)
/// and derives all real-valued draws from raw 64-bit words with explicit
/// arithmetic, so that identical seeds give bit-identical streams on every
/// platform.  The distribution helpers in <random> are intentionally not
/// used: their algorithms are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Raw 64-bit word from the engine.
  std::uint64_t next_u64();

  /// Uniform double in [0, 1) with 53 random mantissa bits.
  double uniform01();

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi);

  /// Standard normal deviate (Box-Muller, pairs cached).
  double normal();

  /// Uniform integer in [lo, hi] inclusive, via rejection sampling.
  int uniform_int(int lo, int hi);

  std::uint64_t seed() const { return seed_; }

  /// Mixes a base seed with a stream index so that independent consumers
  /// (data generation, sampling, optimizer restarts, ...) get decorrelated
  /// streams from one scenario seed.  SplitMix64 finalizer.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream);

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace zonoreach
