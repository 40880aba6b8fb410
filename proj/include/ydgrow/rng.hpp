#pragma once

// splitmix64-based randomness. Everything downstream of a 64-bit seed is
// deterministic and platform-independent; no <random> distributions are used.

#include <cstdint>

namespace ydgrow {

// One splitmix64 step applied to x (Vigna's public-domain constants).
constexpr uint64_t splitmix64_once(uint64_t x) {
  uint64_t z = x + 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Per-trial seed derivation: splitmix64(master XOR index).
constexpr uint64_t derive_seed(uint64_t master, uint64_t index) {
  return splitmix64_once(master ^ index);
}

class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53 significant bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool next_bernoulli(double p) { return next_double() < p; }

 private:
  uint64_t state_;
};

constexpr double u64_to_unit(uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Position-keyed hash: the value at (x, y) depends only on (seed, x, y), so
// boxes of different sizes sample the same underlying field.
constexpr uint64_t field_u64(uint64_t seed, int64_t x, int64_t y) {
  uint64_t h = splitmix64_once(seed ^ 0x632be59bd9b4e019ull);
  h = splitmix64_once(h ^ static_cast<uint64_t>(x));
  h = splitmix64_once(h ^ static_cast<uint64_t>(y));
  return h;
}

constexpr bool field_bernoulli(uint64_t seed, int64_t x, int64_t y, double p) {
  return u64_to_unit(field_u64(seed, x, y)) < p;
}

}  // namespace ydgrow
