#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eigensense/dataset.hpp"
#include "eigensense/kde.hpp"

namespace eigensense {

struct GridAxis {
  std::string name;
  VarRole role = VarRole::kUnspecified;
};

struct GridConfig {
  int bins = 10;
  // Upper edge of the gridded region on the normalized scale.  Slightly
  // above 1 so kernel mass smoothed past the data maximum stays on-grid.
  double span = 1.1;
  std::size_t cell_cap = 10'000'000;
  int threads = 1;
};

// Discrete joint distribution on a hypercube grid: `bins` cells per axis,
// cells stored flat in lexicographic order with the last axis fastest.
class ProbabilityGrid {
 public:
  ProbabilityGrid() = default;
  ProbabilityGrid(std::vector<GridAxis> axes, int bins,
                  std::vector<double> cells);

  std::size_t rank() const noexcept { return axes_.size(); }
  int bins() const noexcept { return bins_; }
  const std::vector<GridAxis>& axes() const noexcept { return axes_; }

  std::span<const double> cells() const noexcept { return cells_; }
  std::span<double> cells() noexcept { return cells_; }

  std::optional<std::size_t> axis_index(std::string_view name) const;

  std::size_t flat_index(std::span<const std::size_t> idx) const;
  double at(std::span<const std::size_t> idx) const {
    return cells_[flat_index(idx)];
  }

  // Total mass found by the last clamp_normalize (1 for hand-built grids).
  // Values well below 1 mean the grid span is clipping the distribution.
  double coverage_mass() const noexcept { return coverage_mass_; }
  void set_coverage_mass(double m) noexcept { coverage_mass_ = m; }

 private:
  std::vector<GridAxis> axes_;
  int bins_ = 0;
  std::vector<double> cells_;
  double coverage_mass_ = 1.0;
};

// Cell probabilities by inclusion-exclusion on the smoothed CDF: each cell
// gets cdf(upper corner) minus the mass of every cell that precedes it
// component-wise.  Quadratic in the cell count; kept as the plain-reading
// reference the fast builder is checked against.
ProbabilityGrid build_grid_reference(const KdeModel& model,
                                     std::vector<GridAxis> axes,
                                     const GridConfig& cfg);

// Same distribution computed directly: for a product kernel the mass in a
// cell is the sample average of per-axis CDF increments, so each cell costs
// O(n d) instead of a subtraction over all predecessors.  Axis 0's lower
// edge absorbs the tail below the grid.  Results are bit-identical across
// thread counts.
ProbabilityGrid build_grid_product(const KdeModel& model,
                                   std::vector<GridAxis> axes,
                                   const GridConfig& cfg);

// Zeroes negative round-off cells and rescales to total mass 1, recording
// the pre-scaling total as coverage_mass.  Throws NumericError when there
// is no positive mass at all.
void clamp_normalize(ProbabilityGrid& grid);

// Sums out every axis not named in `keep`; kept axes stay in grid order.
ProbabilityGrid marginal(const ProbabilityGrid& grid,
                         std::span<const std::string> keep);

// One row per cell: each axis's bin index, then the probability.
void write_grid_csv(const ProbabilityGrid& grid, std::ostream& out);

}  // namespace eigensense
