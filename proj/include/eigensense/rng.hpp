#pragma once

#include <cstdint>
#include <random>

namespace eigensense {

// SplitMix64 finalizer, used to spread consecutive seeds across the full
// 64-bit space before they reach the row engines.
inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// One engine per generated row.  Row streams depend only on (seed, row),
// so neither generation order nor thread count can change the samples.
inline std::mt19937_64 row_engine(std::uint64_t seed, std::uint64_t row) {
  return std::mt19937_64{splitmix64(splitmix64(seed) + row)};
}

// Uniform double in [0, 1) from the top 53 bits of the engine output.
// std::uniform_real_distribution is implementation-defined; this is not.
inline double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

}  // namespace eigensense
