#pragma once

#include <cstdint>
#include <random>

// Deterministic random streams. Every generated column gets its own engine,
// seeded from (master seed, trial index, column index) through a SplitMix64
// finalizer chain, so columns and trials are statistically independent and a
// run is reproducible bit-for-bit from the master seed alone. mt19937_64 is
// fully specified by the standard, which keeps the byte stream portable
// across compilers and platforms.

namespace msu {

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t trial,
                                        std::uint64_t column) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ trial);
  return splitmix64(h ^ column);
}

class Stream {
 public:
  explicit Stream(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Unbiased uniform draw in [0, bound), bound >= 1, by rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t r = eng_();
      if (r >= threshold) return r % bound;
    }
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_unit() { return (eng_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace msu
