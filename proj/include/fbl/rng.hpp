#pragma once

#include <cstdint>

namespace fbl {

inline uint64_t splitmix64(uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Combines two 64-bit values into one stream seed.
inline uint64_t mix64(uint64_t a, uint64_t b) {
  uint64_t s = a ^ (0x9e3779b97f4a7c15ULL + (b << 6) + (b >> 2));
  return splitmix64(s);
}

/// Deterministic generator with platform-independent output (splitmix64
/// stream; no libstdc++ distributions, whose output is unspecified).
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() { return splitmix64(state_); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n); n must be positive.
  uint64_t below(uint64_t n) {
    return static_cast<uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  bool coin() { return (next_u64() & 1) != 0; }

  /// Independent substream; forks with distinct tags never collide in practice.
  Rng fork(uint64_t tag) const { return Rng(mix64(state_, tag)); }

 private:
  uint64_t state_;
};

}  // namespace fbl
