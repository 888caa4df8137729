// Seeded randomness: std::mt19937_64 streams plus a stateless per-index hash.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace kerdock {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ull));
}

// Independent generator for (seed, stream); engine output is fully specified by the standard.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(mix_seed(seed, stream));
}

// Uniform value on [0, 2^bits); bits <= 32.
inline std::uint32_t draw_bits(std::mt19937_64& g, int bits) {
  return bits == 0 ? 0u : static_cast<std::uint32_t>(g() >> (64 - bits));
}

// Deterministic complex Gaussian for (key, index) with E|z|^2 = 1.
inline std::complex<double> hashed_gaussian(std::uint64_t key, std::uint64_t index) {
  const std::uint64_t a = splitmix64(key ^ splitmix64(2 * index + 1));
  const std::uint64_t b = splitmix64(a ^ 0xd1b54a32d192ed03ull);
  const double u1 = (static_cast<double>(a >> 11) + 0.5) * 0x1.0p-53;
  const double u2 = static_cast<double>(b >> 11) * 0x1.0p-53;
  const double r = std::sqrt(-std::log(u1));
  return {r * std::cos(2 * std::numbers::pi * u2), r * std::sin(2 * std::numbers::pi * u2)};
}

}  // namespace kerdock
