#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace multiloc {

// Derives a child seed from a root seed, a stage label, and an index.
// All randomness in a run flows from one root seed through this function,
// so stages can be rerun independently with identical streams.
std::uint64_t derive_seed(std::uint64_t root, std::string_view label,
                          std::uint64_t index = 0);

// Deterministic random source. The distributions are implemented here
// instead of with std::*_distribution because only the engine, not the
// distributions, is pinned down by the standard; this keeps streams
// identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1).
  double uniform();

  // Uniform in [lo, hi).
  double uniform(double lo, double hi);

  // Uniform integer in [lo, hi], inclusive.
  int uniform_int(int lo, int hi);

  // Standard normal via Box-Muller.
  double gaussian();

 private:
  std::mt19937_64 engine_;
  double cached_gaussian_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace multiloc
