#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "eigensense/matrix.hpp"
#include "eigensense/rng.hpp"

namespace testutil {

// Deterministic uniform [0, 1) test data, independent of the library's
// per-row sampling scheme.
inline eigensense::Matrix uniform_matrix(std::size_t rows, std::size_t cols,
                                         std::uint64_t seed) {
  std::mt19937_64 eng{eigensense::splitmix64(seed)};
  eigensense::Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m(i, j) = eigensense::uniform01(eng);
  return m;
}

// Random probability vector with every entry well above the entropy
// threshold, so threshold handling cannot mask comparison failures.
inline std::vector<double> dense_distribution(std::size_t cells,
                                              std::uint64_t seed) {
  std::mt19937_64 eng{eigensense::splitmix64(seed)};
  std::vector<double> p(cells);
  double total = 0.0;
  for (auto& v : p) {
    v = 0.5 + eigensense::uniform01(eng);
    total += v;
  }
  for (auto& v : p) v /= total;
  return p;
}

}  // namespace testutil
