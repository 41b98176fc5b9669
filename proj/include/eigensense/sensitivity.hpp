#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eigensense/dataset.hpp"
#include "eigensense/grid.hpp"
#include "eigensense/infotheory.hpp"
#include "eigensense/kde.hpp"

namespace eigensense {

// Joint grids beyond this many variables are impractical: cell counts grow
// as bins^d and the KDE has far too few samples per cell to say anything.
inline constexpr std::size_t kMaxVariables = 6;

struct NormalizedColumn {
  std::vector<double> values;  // (x - min) / (max - min), exactly [0, 1]
  double min = 0.0;
  double max = 0.0;
};

// Min-max rescaling of one column.  Throws NumericError for constant
// columns and ValidationError for non-finite values.
NormalizedColumn minmax_normalize(std::span<const double> column);

struct PipelineConfig {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  int bins = 10;
  double span = 1.1;
  BandwidthSpec bandwidth = BandwidthSpec::silverman();
  int threads = 1;
  std::size_t cell_cap = 10'000'000;
};

struct PipelineRun {
  MiResult mi;
  double coverage_mass = 0.0;
  std::vector<double> bandwidth;      // per variable, grid axis order
  std::vector<std::string> variables; // inputs then outputs, config order
};

// Normalizes the selected columns, fits the product-kernel KDE, grids it,
// and measures inputs-vs-outputs mutual information.  When out_grid is
// non-null the normalized joint grid is copied there.
PipelineRun run_pipeline(const Dataset& ds, const PipelineConfig& cfg,
                         ProbabilityGrid* out_grid = nullptr);

// Convenience wrapper returning only the MI numbers.
MiResult total_mi(const Dataset& ds, const PipelineConfig& cfg);

struct SensitivityEntry {
  std::string name;
  MiResult mi_without;
  double coverage_mass = 0.0;
  // Information lost by dropping this input: full raw MI minus raw MI
  // without it.  Near zero (may be slightly negative) for inputs the
  // outputs do not depend on.
  double sensitivity_bits = 0.0;
  // The same loss as a fraction of the full raw MI.
  double sensitivity_normalized = 0.0;
};

struct SensitivityReport {
  MiResult full_mi;
  double full_coverage_mass = 0.0;
  std::vector<double> full_bandwidth;
  std::vector<SensitivityEntry> per_input;  // dataset column order
  std::vector<std::string> ranking;         // descending sensitivity_bits
};

// Leave-one-out sensitivity: re-runs the pipeline with each input removed
// (KDE refit at the lower dimension) and charges the MI drop to that input.
SensitivityReport leave_one_out(const Dataset& ds, const PipelineConfig& cfg);

}  // namespace eigensense
