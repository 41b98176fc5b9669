#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eigensense/grid.hpp"

namespace eigensense {

// Probabilities at or below this threshold contribute exactly zero entropy.
// Deliberately far above machine epsilon: discretized KDE grids carry broad
// fields of near-zero cells whose -p log2 p terms would otherwise swamp the
// estimate with discretization noise.
inline constexpr double kZeroProbThreshold = 1e-5;

// Shannon entropy in bits of a normalized distribution (sum within 1e-6
// of 1; ValidationError otherwise, or on negative entries).
double entropy(std::span<const double> probs);

// Entropy of the grid's full joint distribution.
double joint_entropy(const ProbabilityGrid& grid);

struct MiNormalization {
  double normalized = 0.0;
  double divisor_bits = 0.0;
};

// Scales raw mutual information into [0, 1] by the capacity of the smaller
// variable group: min(left_size, right_size) * log2(bins).
MiNormalization normalize_mi(double raw_bits, int bins, std::size_t left_size,
                             std::size_t right_size);

struct MiResult {
  double raw_bits = 0.0;
  double normalized = 0.0;
  double joint_entropy_bits = 0.0;
  double divisor_bits = 0.0;
  // One (axis name, entropy) pair per grid axis, in grid order.
  std::vector<std::pair<std::string, double>> marginal_entropies;
};

// Generalized mutual information between two disjoint groups of grid axes:
// the sum of single-axis entropies minus the joint entropy, over the grid
// marginalized to the union of the groups.  Non-negative by construction.
MiResult mutual_information(const ProbabilityGrid& grid,
                            std::span<const std::string> left,
                            std::span<const std::string> right);

}  // namespace eigensense
