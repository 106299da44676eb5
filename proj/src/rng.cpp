#include "infoclubs/rng.hpp"

#include <cmath>
#include <numbers>

namespace infoclubs {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// SplitMix64 finalizer: a bijective mixer with full avalanche.
std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t CounterRng::bits(std::uint64_t sample, std::uint64_t slot) const {
  std::uint64_t h = mix(seed_ + kGolden);
  h = mix(h + sample * kGolden);
  h = mix(h + slot * kGolden);
  return h;
}

double CounterRng::uniform(std::uint64_t sample, std::uint64_t slot) const {
  // 53 uniform bits, offset to the open interval.
  return (static_cast<double>(bits(sample, slot) >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal(std::uint64_t sample, std::uint64_t slot) const {
  const double u1 = uniform(sample, 2 * slot);
  const double u2 = uniform(sample, 2 * slot + 1);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace infoclubs
