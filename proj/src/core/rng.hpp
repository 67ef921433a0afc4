#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string_view>

namespace xlt {

// Unbiased uniform draw from [0, n), n > 0. Fully specified (rejection over
// the engine's raw output) so sequences are identical across standard library
// implementations.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t rem = (std::numeric_limits<std::uint64_t>::max() % n + 1) % n;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - rem;
  std::uint64_t r;
  do {
    r = rng();
  } while (rem != 0 && r > limit);
  return r % n;
}

// Uniform real in [0, 1) from the top 53 bits of one engine draw.
inline double unit_real(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
inline constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

inline std::uint64_t fnv1a64(std::string_view data, std::uint64_t h = kFnvOffset) {
  for (unsigned char c : data) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

inline std::uint64_t fnv1a64_byte(unsigned char c, std::uint64_t h) {
  h ^= c;
  h *= kFnvPrime;
  return h;
}

inline std::uint64_t fnv1a64_u64(std::uint64_t value, std::uint64_t h) {
  for (int i = 0; i < 8; ++i) {
    h = fnv1a64_byte(static_cast<unsigned char>(value >> (8 * i)), h);
  }
  return h;
}

}  // namespace xlt
