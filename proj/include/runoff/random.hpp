#pragma once

#include <cstdint>
#include <random>

namespace runoff {

// Portable seeded randomness. The engine is std::mt19937_64, whose output
// sequence is fixed by the C++ standard; the standard distributions are not,
// so bounded draws are done here by rejection sampling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound), bound >= 1.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x > limit);
    return x % bound;
  }

  unsigned __int128 below128(unsigned __int128 bound) {
    if (bound <= UINT64_MAX) return below(static_cast<std::uint64_t>(bound));
    const unsigned __int128 max = ~static_cast<unsigned __int128>(0);
    const unsigned __int128 limit = max - (max % bound + 1) % bound;
    unsigned __int128 x;
    do {
      const std::uint64_t hi = engine_();
      const std::uint64_t lo = engine_();
      x = (static_cast<unsigned __int128>(hi) << 64) | lo;
    } while (x > limit);
    return x % bound;
  }

  int below_int(int bound) { return static_cast<int>(below(static_cast<std::uint64_t>(bound))); }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finaliser applied to master ^ golden * (index + 1). Used to give
// every trial of an experiment its own independent stream.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master ^ (0x9E3779B97F4A7C15ULL * (index + 1));
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace runoff
