#pragma once

#include <cstdint>
#include <random>

namespace swarmcit {

// SplitMix64 finaliser over a combined pair; used to derive independent seeds
// for rounds, particles and benchmark repetitions from one master seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

// Seeded generator with platform-independent draws. The standard
// distributions are implementation-defined, so draws are computed here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform in [0, n), n > 0, by rejection.
  int below(int n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace swarmcit
