#pragma once

#include <cstdint>
#include <vector>

namespace byzmac {

/// SplitMix64 generator. Self-contained so that seeded results are
/// bit-identical across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound) without modulo bias (Lemire rejection).
  uint64_t next_below(uint64_t bound) {
    if (bound <= 1) return 0;
    __uint128_t m;
    uint64_t l;
    do {
      m = static_cast<__uint128_t>(next_u64()) * bound;
      l = static_cast<uint64_t>(m);
    } while (l < (-bound) % bound);
    return static_cast<uint64_t>(m >> 64);
  }

  /// Uniform in [0, 1) with 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(next_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  /// Derives an independent stream from (seed, stream ids). Used for
  /// per-trial / per-codeword seeding so results do not depend on the
  /// order or partitioning of work.
  static uint64_t derive(uint64_t seed, uint64_t a, uint64_t b = 0) {
    Rng mix(seed ^ (a * 0x9e3779b97f4a7c15ULL) ^ (b * 0xd1b54a32d192ed03ULL));
    mix.next_u64();
    return mix.next_u64();
  }

 private:
  uint64_t state_;
};

}  // namespace byzmac
