#include "eigensense/infotheory.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "eigensense/errors.hpp"
#include "eigensense/numeric.hpp"

namespace eigensense {

double entropy(std::span<const double> probs) {
  if (probs.empty())
    throw ValidationError("entropy needs a non-empty distribution");
  KahanSum total;
  for (double p : probs) {
    if (p < 0.0)
      throw ValidationError("entropy needs non-negative probabilities");
    total.add(p);
  }
  if (std::abs(total.value() - 1.0) > 1e-6)
    throw ValidationError("entropy needs a normalized distribution (sum = " +
                          std::to_string(total.value()) + ")");
  KahanSum h;
  for (double p : probs) {
    if (p > kZeroProbThreshold) h.add(-p * std::log2(p));
  }
  // Tiny negative round-off can survive when one cell holds nearly all mass.
  return std::max(0.0, h.value());
}

double joint_entropy(const ProbabilityGrid& grid) {
  return entropy(grid.cells());
}

MiNormalization normalize_mi(double raw_bits, int bins, std::size_t left_size,
                             std::size_t right_size) {
  if (bins < 2)
    throw ValidationError("normalization needs at least 2 bins");
  if (left_size == 0 || right_size == 0)
    throw ValidationError("normalization needs non-empty variable groups");
  const double divisor =
      static_cast<double>(std::min(left_size, right_size)) *
      std::log2(static_cast<double>(bins));
  const double scaled = raw_bits / divisor;
  return {std::clamp(scaled, 0.0, 1.0), divisor};
}

MiResult mutual_information(const ProbabilityGrid& grid,
                            std::span<const std::string> left,
                            std::span<const std::string> right) {
  if (left.empty() || right.empty())
    throw ValidationError("mutual information needs two non-empty groups");
  std::set<std::string> left_set(left.begin(), left.end());
  if (left_set.size() != left.size())
    throw ValidationError("left group repeats a variable");
  std::set<std::string> right_set(right.begin(), right.end());
  if (right_set.size() != right.size())
    throw ValidationError("right group repeats a variable");
  for (const auto& name : right) {
    if (left_set.count(name))
      throw ValidationError("variable '" + name + "' is in both groups");
  }

  // Marginalize to the union (in grid axis order) when the grid carries
  // axes outside either group.
  std::vector<std::string> wanted;
  for (const auto& a : grid.axes()) {
    if (left_set.count(a.name) || right_set.count(a.name))
      wanted.push_back(a.name);
  }
  if (wanted.size() != left.size() + right.size())
    throw ValidationError("some requested variables are not grid axes");

  const ProbabilityGrid reduced =
      wanted.size() == grid.rank() ? grid : marginal(grid, wanted);

  MiResult r;
  KahanSum marginal_sum;
  for (const auto& a : reduced.axes()) {
    const std::string one[] = {a.name};
    const double h = entropy(marginal(reduced, one).cells());
    r.marginal_entropies.emplace_back(a.name, h);
    marginal_sum.add(h);
  }
  r.joint_entropy_bits = joint_entropy(reduced);
  // Total correlation between the groups; clamp away negative round-off.
  r.raw_bits = std::max(0.0, marginal_sum.value() - r.joint_entropy_bits);
  const auto norm =
      normalize_mi(r.raw_bits, reduced.bins(), left.size(), right.size());
  r.normalized = norm.normalized;
  r.divisor_bits = norm.divisor_bits;
  return r;
}

}  // namespace eigensense
