#pragma once

#include <cstdint>

namespace sigalloc {

// SplitMix64 (Steele, Lea, Flood 2014). All randomness in the library goes
// through this generator so that runs are bit-reproducible across platforms;
// std::uniform_real_distribution makes no such guarantee.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1), 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + next_double() * (hi - lo); }

  // Uniform in (lo, hi]: mirrors [0,1) onto (0,1] before scaling.
  double uniform_open_lo(double lo, double hi) {
    return lo + (1.0 - next_double()) * (hi - lo);
  }

  // Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

private:
  std::uint64_t state_;
};

// Deterministic sub-seed for a named stream of a master seed. Stream 0 is
// the first output of the master generator, stream k the (k+1)-th.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  SplitMix64 g(master);
  std::uint64_t s = g.next_u64();
  for (std::uint64_t i = 0; i < stream; ++i) s = g.next_u64();
  return s;
}

} // namespace sigalloc
