#pragma once

#include <cstdint>

namespace rmab {

/// One step of the SplitMix64 sequence; also used to hash stream keys.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// xoshiro256** seeded from a hashed key. Streams with identical keys emit
/// identical sequences on every platform, independent of call scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }

  std::uint64_t u64() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1).
  double u01() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return u01() < p; }

  /// Unbiased integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x;
    do {
      x = u64();
    } while (x >= limit);
    return x % n;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
};

/// Derives an independent stream from (seed, tag, a, b). Used to key
/// per-arm transition streams, per-timestep policy streams, and per-arm
/// cohort generation streams.
inline Rng derive_stream(std::uint64_t seed, std::uint64_t tag,
                         std::uint64_t a = 0, std::uint64_t b = 0) {
  std::uint64_t h = seed;
  splitmix64(h);
  h ^= 0x632be59bd9b4e019ULL ^ tag;
  splitmix64(h);
  h ^= a * 0x9e3779b97f4a7c15ULL + 0x7f4a7c15ULL;
  splitmix64(h);
  h ^= b * 0xd1ce4e5b9ULL + 0x2545f4914f6cdd1dULL;
  return Rng(h);
}

namespace stream {
// Stream tags. Keeping them in one place avoids accidental collisions.
inline constexpr std::uint64_t kTransition = 1;   // (seed, arm)
inline constexpr std::uint64_t kPolicy = 2;       // (seed, timestep)
inline constexpr std::uint64_t kCohortArm = 3;    // (cohort seed, class, index)
inline constexpr std::uint64_t kCohortInit = 4;   // (cohort seed, class, index)
}  // namespace stream

}  // namespace rmab
