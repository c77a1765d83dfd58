#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace rmz {

// Counter-based stream splitting: every (seed, index...) pair maps to an
// independent engine, so trials can run in any order or in parallel and
// still reproduce bit-identical results.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_keys(std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(a) ^ (0x9e3779b97f4a7c15ULL + b));
}

inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t idx) {
  return std::mt19937_64(mix_keys(seed, idx));
}

inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t idx,
                                 std::uint64_t sub) {
  return std::mt19937_64(mix_keys(mix_keys(seed, idx), sub));
}

inline std::complex<double> complex_gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  double re = n01(rng);
  double im = n01(rng);
  return {re, im};
}

// Uniform point in the closed disk |z - center| <= radius.
inline std::complex<double> uniform_in_disk(std::mt19937_64& rng,
                                            std::complex<double> center,
                                            double radius) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double r = radius * std::sqrt(u01(rng));
  double theta = 2.0 * 3.14159265358979323846 * u01(rng);
  return center + std::polar(r, theta);
}

}  // namespace rmz
