#pragma once

#include <cstdint>

namespace infoclubs {

// Counter-based generator: every output is a pure function of
// (seed, sample, slot), so per-sample streams can be evaluated in any order
// or split across workers without changing a single draw.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  // 64 uniform bits for the given (sample, slot) coordinate.
  std::uint64_t bits(std::uint64_t sample, std::uint64_t slot) const;

  // Uniform double strictly inside (0, 1).
  double uniform(std::uint64_t sample, std::uint64_t slot) const;

  // Standard normal via Box-Muller; slot k consumes uniform slots 2k, 2k+1.
  double normal(std::uint64_t sample, std::uint64_t slot) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

}  // namespace infoclubs
