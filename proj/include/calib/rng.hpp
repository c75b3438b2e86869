#pragma once

#include <cstdint>
#include <random>

namespace calib {

// SplitMix64 finalizer.  Used to derive independent per-trial seeds from a
// (master seed, counter) pair so serial and parallel execution agree.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ull * (counter + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Thin deterministic wrapper over std::mt19937_64.  The standard pins the
// mt19937_64 output sequence, so results are reproducible across platforms;
// the distribution helpers below avoid the implementation-defined
// <random> distribution classes for the same reason.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Returns 1 with probability p.  Exact at the endpoints: p = 0 never fires,
  // p = 1 always does.
  int bernoulli(double p) { return uniform01() < p ? 1 : 0; }

  // Unbiased integer in [0, n) via rejection sampling.
  std::uint64_t uniform_below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = gen_();
      if (r >= threshold) return r % n;
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace calib
