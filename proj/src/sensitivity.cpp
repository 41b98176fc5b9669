#include "eigensense/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "eigensense/errors.hpp"

namespace eigensense {

NormalizedColumn minmax_normalize(std::span<const double> column) {
  if (column.size() < 2)
    throw ValidationError("normalization needs at least 2 values");
  for (double v : column) {
    if (!std::isfinite(v))
      throw ValidationError("normalization needs finite values");
  }
  const auto [lo_it, hi_it] = std::minmax_element(column.begin(), column.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (!(hi > lo))
    throw NumericError("constant column cannot be min-max normalized");
  NormalizedColumn out;
  out.min = lo;
  out.max = hi;
  out.values.resize(column.size());
  const double range = hi - lo;
  for (std::size_t i = 0; i < column.size(); ++i)
    out.values[i] = (column[i] - lo) / range;
  return out;
}

namespace {

void validate_config(const Dataset& ds, const PipelineConfig& cfg) {
  if (cfg.inputs.empty())
    throw ValidationError("pipeline needs at least one input variable");
  if (cfg.outputs.empty())
    throw ValidationError("pipeline needs at least one output variable");
  std::set<std::string> seen;
  for (const auto& name : cfg.inputs) {
    if (!seen.insert(name).second)
      throw ValidationError("variable '" + name + "' listed twice");
  }
  for (const auto& name : cfg.outputs) {
    if (!seen.insert(name).second)
      throw ValidationError("variable '" + name + "' listed twice");
  }
  const std::size_t total = cfg.inputs.size() + cfg.outputs.size();
  if (total > kMaxVariables)
    throw ValidationError("joint grid over " + std::to_string(total) +
                          " variables exceeds the practical limit of " +
                          std::to_string(kMaxVariables));
  for (const auto& name : cfg.inputs) ds.require_column(name);
  for (const auto& name : cfg.outputs) ds.require_column(name);
  if (cfg.bins < 2)
    throw ValidationError("pipeline needs at least 2 bins");
  if (!(cfg.span > 0.0))
    throw ValidationError("grid span must be positive");
  if (cfg.threads < 1)
    throw ValidationError("thread count must be at least 1");
}

}  // namespace

PipelineRun run_pipeline(const Dataset& ds, const PipelineConfig& cfg,
                         ProbabilityGrid* out_grid) {
  validate_config(ds, cfg);

  std::vector<std::string> vars = cfg.inputs;
  vars.insert(vars.end(), cfg.outputs.begin(), cfg.outputs.end());

  Matrix m(ds.n_rows(), vars.size());
  for (std::size_t j = 0; j < vars.size(); ++j) {
    const auto raw = ds.column_values(vars[j]);
    NormalizedColumn col;
    try {
      col = minmax_normalize(raw);
    } catch (const NumericError&) {
      throw NumericError("column '" + vars[j] +
                         "' is constant and cannot be normalized");
    }
    for (std::size_t i = 0; i < col.values.size(); ++i) m(i, j) = col.values[i];
  }

  PipelineRun run;
  run.variables = vars;
  BandwidthSpec bw = cfg.bandwidth;
  bw.threads = cfg.threads;
  run.bandwidth = select_bandwidth(m, bw);

  std::vector<GridAxis> axes(vars.size());
  for (std::size_t j = 0; j < vars.size(); ++j) {
    axes[j] = {vars[j],
               j < cfg.inputs.size() ? VarRole::kInput : VarRole::kOutput};
  }

  KdeModel model(std::move(m), run.bandwidth);
  ProbabilityGrid grid = build_grid_product(
      model, std::move(axes),
      GridConfig{cfg.bins, cfg.span, cfg.cell_cap, cfg.threads});

  run.mi = mutual_information(grid, cfg.inputs, cfg.outputs);
  run.coverage_mass = grid.coverage_mass();
  if (out_grid) *out_grid = std::move(grid);
  return run;
}

MiResult total_mi(const Dataset& ds, const PipelineConfig& cfg) {
  return run_pipeline(ds, cfg).mi;
}

SensitivityReport leave_one_out(const Dataset& ds,
                                const PipelineConfig& cfg) {
  if (cfg.inputs.size() < 2)
    throw ValidationError(
        "leave-one-out needs at least 2 inputs; removing the only input "
        "leaves nothing to compare");

  const PipelineRun full = run_pipeline(ds, cfg);

  SensitivityReport report;
  report.full_mi = full.mi;
  report.full_coverage_mass = full.coverage_mass;
  report.full_bandwidth = full.bandwidth;

  // Entries follow dataset column order, not config order, so reports are
  // stable however the inputs were listed on the command line.
  std::vector<std::string> ordered = cfg.inputs;
  std::sort(ordered.begin(), ordered.end(),
            [&](const std::string& a, const std::string& b) {
              return ds.require_column(a) < ds.require_column(b);
            });

  for (const auto& name : ordered) {
    PipelineConfig sub = cfg;
    sub.inputs.clear();
    for (const auto& keep : cfg.inputs)
      if (keep != name) sub.inputs.push_back(keep);
    const PipelineRun run = run_pipeline(ds, sub);
    SensitivityEntry entry;
    entry.name = name;
    entry.mi_without = run.mi;
    entry.coverage_mass = run.coverage_mass;
    entry.sensitivity_bits = full.mi.raw_bits - run.mi.raw_bits;
    entry.sensitivity_normalized =
        full.mi.raw_bits > 0.0 ? entry.sensitivity_bits / full.mi.raw_bits
                               : 0.0;
    report.per_input.push_back(std::move(entry));
  }

  std::vector<std::size_t> order(report.per_input.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return report.per_input[a].sensitivity_bits >
           report.per_input[b].sensitivity_bits;
  });
  for (std::size_t i : order) report.ranking.push_back(report.per_input[i].name);
  return report;
}

}  // namespace eigensense
