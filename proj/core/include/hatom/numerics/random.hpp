#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace hatom::rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

//! Independent stream number `index` of a seed.
inline std::mt19937_64 stream(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(index + 1)));
}

//! Uniform on [0, 1) with 53 random bits (platform independent, unlike
//! std::uniform_real_distribution).
inline double uniform(std::mt19937_64 &gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline std::array<double, 3> direction(std::mt19937_64 &gen) {
  const double z = 2.0 * uniform(gen) - 1.0;
  const double ph = 2.0 * std::numbers::pi * uniform(gen);
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {s * std::cos(ph), s * std::sin(ph), z};
}

} // namespace hatom::rng
