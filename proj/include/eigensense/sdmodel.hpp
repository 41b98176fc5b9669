#pragma once

#include <cstdint>
#include <vector>

#include "eigensense/dataset.hpp"

namespace eigensense {

// One draw of the model inputs; each is uniform on [0, 1).
struct ParameterSample {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;
};

// Link gains: g11 couples stock 1 to itself, g12 couples stock 2 into
// stock 1, g21 couples stock 1 into stock 2.  Stock 2 has no self-link.
struct Gains {
  double g11 = 0.0;
  double g12 = 0.0;
  double g21 = 0.0;
};

// Jacobian of the stock net-flow rates: entry (i, k) is the partial
// derivative of stock i's rate with respect to stock k.
struct Jacobian2x2 {
  double j11 = 0.0;
  double j12 = 0.0;
  double j21 = 0.0;
  double j22 = 0.0;
};

// Real eigenvalues in ascending order; y2 is the dominant one.
struct EigenPair {
  double y1 = 0.0;
  double y2 = 0.0;
};

// Draws `count` independent parameter rows.  Row i depends only on
// (seed, i), never on how many rows are drawn.
std::vector<ParameterSample> sample_parameters(std::size_t count,
                                               std::uint64_t seed);

Gains gains(const ParameterSample& p) noexcept;

Jacobian2x2 jacobian(const Gains& g) noexcept;

// Closed-form eigenvalues of a 2x2 Jacobian.  Throws NumericError when the
// discriminant is negative (complex pair); this model never produces one
// for inputs in [0, 1).
EigenPair eigenvalues(const Jacobian2x2& j);

// Full simulation: samples inputs, runs them through the gain/Jacobian/
// eigenvalue chain and returns columns x1, x2, x3, y1, y2 with roles set.
Dataset generate_dataset(std::size_t count, std::uint64_t seed);

}  // namespace eigensense
