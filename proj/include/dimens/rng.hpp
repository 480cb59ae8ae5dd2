#pragma once

#include <cstdint>
#include <random>

namespace dimens {

/// Seeded generator used everywhere randomness appears; uniform draws are built from
/// raw 64-bit outputs so streams are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }
  /// Uniform in [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double normal() { return dist_(engine_); }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> dist_{0.0, 1.0};
};

/// Seed for the i-th independent stream derived from a base seed.
std::uint64_t substream(std::uint64_t seed, std::uint64_t i);

}  // namespace dimens
