#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace wembed {

// splitmix64 finalizer; good avalanche, cheap enough to call per pair.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
  return mix64(a ^ (mix64(b) + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
}

// Uniform double in [0, 1) with 53 random bits. Avoids the
// implementation-defined std::uniform_real_distribution so that seeded runs
// reproduce across standard libraries.
inline double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n). Uses a 64-bit draw; the modulo bias is below
// n * 2^-64 and irrelevant at the scales this project samples.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  return rng() % n;
}

// One standard normal via Box-Muller, again bit-reproducible by construction.
inline double standard_normal(std::mt19937_64& rng) {
  double u1 = unit_double(rng);
  while (u1 <= 0.0) u1 = unit_double(rng);
  const double u2 = unit_double(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

}  // namespace wembed
