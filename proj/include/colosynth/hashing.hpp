#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace colosynth {

// Counter-based pseudo-random primitives. Every stochastic choice in the
// pipeline is a pure function of explicit keys, never of draw order, so
// results are identical under any parallel schedule.

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline uint64_t hash_combine(uint64_t a, uint64_t b) {
  return splitmix64(a ^ splitmix64(b));
}

inline uint64_t hash_key(uint64_t seed, uint64_t a) { return splitmix64(seed ^ splitmix64(a)); }

inline uint64_t hash_key(uint64_t seed, uint64_t a, uint64_t b) {
  return splitmix64(hash_key(seed, a) ^ splitmix64(b + 0x632be59bd9b4e019ull));
}

inline uint64_t hash_key(uint64_t seed, uint64_t a, uint64_t b, uint64_t c) {
  return splitmix64(hash_key(seed, a, b) ^ splitmix64(c + 0x9e6c63d0876a9f77ull));
}

// Uniform double in [0, 1) from 53 high bits.
inline double uniform01(uint64_t h) { return static_cast<double>(h >> 11) * 0x1.0p-53; }

inline double uniform_range(uint64_t h, double lo, double hi) {
  return lo + (hi - lo) * uniform01(h);
}

// Standard normal via Box-Muller on two decorrelated sub-streams of one key.
inline double gauss01(uint64_t h) {
  uint64_t h1 = splitmix64(h ^ 0x2545f4914f6cdd1dull);
  uint64_t h2 = splitmix64(h ^ 0x27220a95fe1cfe77ull);
  double u1 = (static_cast<double>(h1 >> 11) + 0.5) * 0x1.0p-53;  // (0, 1)
  double u2 = uniform01(h2);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

}  // namespace colosynth
