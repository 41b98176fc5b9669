#include "eigensense/grid.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <thread>

#include "eigensense/csv.hpp"
#include "eigensense/errors.hpp"
#include "eigensense/numeric.hpp"

namespace eigensense {

namespace {

std::size_t checked_cell_count(int bins, std::size_t rank,
                               std::size_t cell_cap) {
  if (bins < 2) throw ValidationError("grid needs at least 2 bins per axis");
  if (rank == 0) throw ValidationError("grid needs at least one axis");
  if (cell_cap == 0) throw ValidationError("grid cell cap must be positive");
  std::size_t cells = 1;
  for (std::size_t k = 0; k < rank; ++k) {
    // The cap is an exclusive bound: bins^rank must stay strictly below it.
    if (cells > (cell_cap - 1) / static_cast<std::size_t>(bins))
      throw ValidationError("grid of " + std::to_string(bins) + "^" +
                            std::to_string(rank) + " cells exceeds the cap of " +
                            std::to_string(cell_cap));
    cells *= static_cast<std::size_t>(bins);
  }
  return cells;
}

void check_axes(const KdeModel& model, const std::vector<GridAxis>& axes,
                const GridConfig& cfg) {
  if (axes.size() != model.dimension())
    throw ValidationError("grid has " + std::to_string(axes.size()) +
                          " axes for a " + std::to_string(model.dimension()) +
                          "-dimensional estimator");
  std::set<std::string> seen;
  for (const auto& a : axes) {
    if (a.name.empty()) throw ValidationError("axis names must be non-empty");
    if (!seen.insert(a.name).second)
      throw ValidationError("duplicate axis name '" + a.name + "'");
  }
  if (!(cfg.span > 0.0))
    throw ValidationError("grid span must be positive");
  if (cfg.threads < 1)
    throw ValidationError("thread count must be at least 1");
}

void decode_index(std::size_t flat, int bins, std::span<std::size_t> idx) {
  const auto b = static_cast<std::size_t>(bins);
  for (std::size_t k = idx.size(); k-- > 0;) {
    idx[k] = flat % b;
    flat /= b;
  }
}

}  // namespace

ProbabilityGrid::ProbabilityGrid(std::vector<GridAxis> axes, int bins,
                                 std::vector<double> cells)
    : axes_(std::move(axes)), bins_(bins), cells_(std::move(cells)) {
  std::size_t expected = 1;
  for (std::size_t k = 0; k < axes_.size(); ++k)
    expected *= static_cast<std::size_t>(bins_);
  if (bins_ < 2) throw ValidationError("grid needs at least 2 bins per axis");
  if (axes_.empty()) throw ValidationError("grid needs at least one axis");
  if (cells_.size() != expected)
    throw ValidationError("grid has " + std::to_string(cells_.size()) +
                          " cells, expected " + std::to_string(expected));
}

std::optional<std::size_t> ProbabilityGrid::axis_index(
    std::string_view name) const {
  for (std::size_t k = 0; k < axes_.size(); ++k)
    if (axes_[k].name == name) return k;
  return std::nullopt;
}

std::size_t ProbabilityGrid::flat_index(std::span<const std::size_t> idx) const {
  if (idx.size() != axes_.size())
    throw ValidationError("cell index rank does not match grid rank");
  std::size_t flat = 0;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] >= static_cast<std::size_t>(bins_))
      throw ValidationError("cell index out of range on axis " +
                            std::to_string(k));
    flat = flat * static_cast<std::size_t>(bins_) + idx[k];
  }
  return flat;
}

ProbabilityGrid build_grid_reference(const KdeModel& model,
                                     std::vector<GridAxis> axes,
                                     const GridConfig& cfg) {
  check_axes(model, axes, cfg);
  const std::size_t d = axes.size();
  const std::size_t cells = checked_cell_count(cfg.bins, d, cfg.cell_cap);
  const double len = cfg.span / static_cast<double>(cfg.bins);

  std::vector<double> probs(cells, 0.0);
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> corner(d, 0.0);
  for (std::size_t c = 0; c < cells; ++c) {
    decode_index(c, cfg.bins, idx);
    for (std::size_t k = 0; k < d; ++k)
      corner[k] = static_cast<double>(idx[k] + 1) * len;
    // Mass below the upper corner, minus everything already assigned to
    // cells that precede this one component-wise.
    KahanSum sub;
    std::vector<std::size_t> prev(d, 0);
    for (std::size_t p = 0; p < c; ++p) {
      decode_index(p, cfg.bins, prev);
      bool dominated = true;
      for (std::size_t k = 0; k < d && dominated; ++k)
        dominated = prev[k] <= idx[k];
      if (dominated) sub.add(probs[p]);
    }
    probs[c] = model.cdf(corner) - sub.value();
  }

  ProbabilityGrid grid(std::move(axes), cfg.bins, std::move(probs));
  clamp_normalize(grid);
  return grid;
}

ProbabilityGrid build_grid_product(const KdeModel& model,
                                   std::vector<GridAxis> axes,
                                   const GridConfig& cfg) {
  check_axes(model, axes, cfg);
  const std::size_t d = axes.size();
  const std::size_t cells = checked_cell_count(cfg.bins, d, cfg.cell_cap);
  const auto bins = static_cast<std::size_t>(cfg.bins);
  const double len = cfg.span / static_cast<double>(cfg.bins);
  const Matrix& s = model.samples();
  const auto& h = model.bandwidth();
  const std::size_t n = s.rows();

  // Per (sample, axis, bin): the normal-CDF increment across the bin.  The
  // first bin's increment runs from -infinity, so mass smoothed below the
  // grid lands in bin 0 rather than vanishing.
  std::vector<double> inc(n * d * bins);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      double prev = 0.0;
      double* row = inc.data() + (i * d + k) * bins;
      for (std::size_t b = 0; b < bins; ++b) {
        const double edge = static_cast<double>(b + 1) * len;
        const double cur = normal_cdf((edge - s(i, k)) / h[k]);
        row[b] = cur - prev;
        prev = cur;
      }
    }
  }

  std::vector<double> probs(cells, 0.0);

  // Cells are split into contiguous ranges, one per worker.  Every cell's
  // sum runs over samples in ascending order with a left-to-right product,
  // so the result is bit-identical for any thread count.
  auto worker = [&](std::size_t begin, std::size_t end) {
    if (begin >= end) return;
    std::vector<std::size_t> idx(d);
    std::vector<double> prefix(d);
    for (std::size_t i = 0; i < n; ++i) {
      const double* base = inc.data() + i * d * bins;
      decode_index(begin, cfg.bins, idx);
      for (std::size_t k = 0; k < d; ++k)
        prefix[k] = (k ? prefix[k - 1] : 1.0) * base[k * bins + idx[k]];
      for (std::size_t c = begin;;) {
        probs[c] += prefix[d - 1];
        if (++c == end) break;
        // Advance the odometer; only products from the first changed axis
        // down need recomputing.
        std::size_t k = d - 1;
        while (idx[k] == bins - 1) {
          idx[k] = 0;
          --k;
        }
        ++idx[k];
        for (std::size_t m = k; m < d; ++m)
          prefix[m] = (m ? prefix[m - 1] : 1.0) * base[m * bins + idx[m]];
      }
    }
  };

  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t n_threads =
      std::min({static_cast<std::size_t>(cfg.threads), cells, hw});
  if (n_threads <= 1) {
    worker(0, cells);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads - 1);
    for (std::size_t t = 1; t < n_threads; ++t)
      pool.emplace_back(worker, cells * t / n_threads,
                        cells * (t + 1) / n_threads);
    worker(0, cells / n_threads);
    for (auto& th : pool) th.join();
  }

  const double inv_n = 1.0 / static_cast<double>(n);
  for (double& p : probs) p *= inv_n;

  ProbabilityGrid grid(std::move(axes), cfg.bins, std::move(probs));
  clamp_normalize(grid);
  return grid;
}

void clamp_normalize(ProbabilityGrid& grid) {
  auto cells = grid.cells();
  for (double& p : cells)
    if (p < 0.0) p = 0.0;
  const double total = kahan_sum(cells);
  if (!(total > 0.0))
    throw NumericError("grid holds no probability mass to normalize");
  for (double& p : cells) p /= total;
  grid.set_coverage_mass(total);
}

ProbabilityGrid marginal(const ProbabilityGrid& grid,
                         std::span<const std::string> keep) {
  if (keep.empty())
    throw ValidationError("marginal needs at least one axis to keep");
  std::vector<bool> kept(grid.rank(), false);
  for (const auto& name : keep) {
    const auto k = grid.axis_index(name);
    if (!k) throw ValidationError("unknown grid axis '" + name + "'");
    kept[*k] = true;
  }

  std::vector<GridAxis> out_axes;
  std::vector<std::size_t> kept_dims;
  for (std::size_t k = 0; k < grid.rank(); ++k) {
    if (kept[k]) {
      out_axes.push_back(grid.axes()[k]);
      kept_dims.push_back(k);
    }
  }
  if (kept_dims.size() == grid.rank()) {
    ProbabilityGrid copy = grid;
    return copy;
  }

  const auto bins = static_cast<std::size_t>(grid.bins());
  std::size_t out_cells = 1;
  for (std::size_t k = 0; k < kept_dims.size(); ++k) out_cells *= bins;

  std::vector<double> out(out_cells, 0.0);
  std::vector<std::size_t> idx(grid.rank(), 0);
  const auto src = grid.cells();
  for (std::size_t c = 0; c < src.size(); ++c) {
    decode_index(c, grid.bins(), idx);
    std::size_t flat = 0;
    for (std::size_t k : kept_dims) flat = flat * bins + idx[k];
    out[flat] += src[c];
  }

  ProbabilityGrid result(std::move(out_axes), grid.bins(), std::move(out));
  result.set_coverage_mass(grid.coverage_mass());
  return result;
}

void write_grid_csv(const ProbabilityGrid& grid, std::ostream& out) {
  for (const auto& a : grid.axes()) out << a.name << "_bin,";
  out << "probability\n";
  std::vector<std::size_t> idx(grid.rank(), 0);
  const auto cells = grid.cells();
  for (std::size_t c = 0; c < cells.size(); ++c) {
    decode_index(c, grid.bins(), idx);
    for (std::size_t k : idx) out << k << ',';
    out << format_double(cells[c]) << '\n';
  }
  if (!out) throw IoError("failed writing grid CSV");
}

}  // namespace eigensense
