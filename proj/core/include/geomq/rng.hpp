#ifndef GEOMQ_RNG_HPP
#define GEOMQ_RNG_HPP

#include <cmath>
#include <cstdint>

namespace geomq {

/// splitmix64: 64-bit-state generator (Steele/Lea/Flood mixing constants).
/// Chosen as the portable, documented generator for all sampling: the same
/// seed reproduces the same draws on any platform, so reports naming
/// rng = "splitmix64" can be replicated bit-for-bit elsewhere.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) from the top 53 bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  /// Standard normal via Box-Muller (one value per call; no state cache so
  /// the draw sequence stays trivially reproducible).
  double normal() {
    double u1 = next_double();
    double u2 = next_double();
    while (u1 <= 0.0) u1 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  static constexpr const char* algorithm() { return "splitmix64"; }

 private:
  std::uint64_t state_;
};

}  // namespace geomq

#endif  // GEOMQ_RNG_HPP
