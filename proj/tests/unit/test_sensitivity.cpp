#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <doctest.h>

#include "eigensense/rng.hpp"
#include "eigensense/sensitivity.hpp"

#include "helpers.hpp"

using namespace eigensense;

namespace {

Dataset make_dataset(const std::vector<std::string>& names,
                     const std::vector<std::vector<double>>& cols) {
  std::vector<ColumnInfo> infos;
  for (const auto& n : names) infos.push_back({n, VarRole::kUnspecified});
  return {infos, Matrix::from_columns(cols)};
}

std::vector<double> uniform_column(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 eng{splitmix64(seed)};
  std::vector<double> out(n);
  for (auto& v : out) v = uniform01(eng);
  return out;
}

bool mi_equal(const MiResult& a, const MiResult& b) {
  if (a.raw_bits != b.raw_bits) return false;
  if (a.normalized != b.normalized) return false;
  if (a.joint_entropy_bits != b.joint_entropy_bits) return false;
  if (a.divisor_bits != b.divisor_bits) return false;
  return a.marginal_entropies == b.marginal_entropies;
}

}  // namespace

TEST_CASE("minmax_normalize maps the attained range onto [0, 1]") {
  const auto r = minmax_normalize(std::vector<double>{2.0, 4.0, 6.0});
  CHECK(r.values == std::vector<double>{0.0, 0.5, 1.0});
  CHECK(r.min == 2.0);
  CHECK(r.max == 6.0);

  // A column already spanning [0, 1] passes through unchanged.
  const std::vector<double> unit = {0.0, 0.25, 0.75, 1.0};
  CHECK(minmax_normalize(unit).values == unit);
}

TEST_CASE("minmax_normalize rejects degenerate columns") {
  CHECK_THROWS_AS(minmax_normalize(std::vector<double>{5.0, 5.0, 5.0}),
                  NumericError);
  CHECK_THROWS_AS(minmax_normalize(std::vector<double>{1.0}), ValidationError);
  const double nan = std::nan("");
  CHECK_THROWS_AS(minmax_normalize(std::vector<double>{0.0, nan}),
                  ValidationError);
}

TEST_CASE("run_pipeline wires normalization, KDE, grid, and MI together") {
  const std::size_t n = 1500;
  const auto x = uniform_column(n, 101);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] * x[i];
  const auto ds = make_dataset({"x", "y"}, {x, y});

  PipelineConfig cfg;
  cfg.inputs = {"x"};
  cfg.outputs = {"y"};

  ProbabilityGrid grid;
  const auto run = run_pipeline(ds, cfg, &grid);

  CHECK(run.variables == std::vector<std::string>{"x", "y"});
  REQUIRE(run.bandwidth.size() == 2);
  CHECK(run.bandwidth[0] > 0.0);
  CHECK(run.coverage_mass > 0.9);
  CHECK(run.coverage_mass <= 1.0 + 1e-12);

  REQUIRE(grid.rank() == 2);
  CHECK(grid.bins() == 10);
  CHECK(grid.axes()[0].name == "x");
  CHECK(grid.axes()[0].role == VarRole::kInput);
  CHECK(grid.axes()[1].role == VarRole::kOutput);

  // y is a deterministic function of x, so the dependence is strong.
  CHECK(run.mi.raw_bits > 0.8);
  CHECK(run.mi.normalized > 0.0);
  CHECK(run.mi.normalized <= 1.0);

  // total_mi is the same computation without the extras.
  CHECK(mi_equal(total_mi(ds, cfg), run.mi));
}

TEST_CASE("an output that copies an input scores near the ceiling") {
  const std::size_t n = 1200;
  const auto x = uniform_column(n, 103);
  const auto ds = make_dataset({"x", "y"}, {x, x});

  PipelineConfig cfg;
  cfg.inputs = {"x"};
  cfg.outputs = {"y"};
  // The least-squares bandwidth hugs the empirical CDF far tighter than the
  // rule of thumb, which matters here: kernel mass crossing bin edges moves
  // off the diagonal and costs joint entropy.  Even so the smoothing leak
  // keeps a perfect copy around 0.88 at this sample size, well short of the
  // 0.97 a leak-free copy would score over this grid.
  cfg.bandwidth = BandwidthSpec::cdf_least_squares(40);

  const auto mi = total_mi(ds, cfg);
  CHECK(mi.normalized >= 0.85);
  CHECK(mi.normalized <= 1.0);
}

TEST_CASE("total_mi is symmetric in the two variable groups") {
  const std::size_t n = 800;
  const auto a = uniform_column(n, 107);
  const auto b = uniform_column(n, 109);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = a[i] + 0.3 * b[i];
  const auto ds = make_dataset({"a", "b", "y"}, {a, b, y});

  PipelineConfig fwd;
  fwd.inputs = {"a", "b"};
  fwd.outputs = {"y"};
  PipelineConfig rev;
  rev.inputs = {"y"};
  rev.outputs = {"a", "b"};

  const auto f = total_mi(ds, fwd);
  const auto r = total_mi(ds, rev);
  CHECK(std::abs(f.raw_bits - r.raw_bits) <= 1e-9);
  CHECK(f.divisor_bits == r.divisor_bits);
}

TEST_CASE("pipeline configuration is validated") {
  const auto ds = make_dataset(
      {"a", "b", "y"},
      {uniform_column(50, 113), uniform_column(50, 114),
       uniform_column(50, 115)});

  PipelineConfig cfg;
  cfg.inputs = {"a"};
  cfg.outputs = {"y"};

  PipelineConfig overlap = cfg;
  overlap.inputs = {"a", "y"};
  CHECK_THROWS_AS(total_mi(ds, overlap), ValidationError);

  PipelineConfig unknown = cfg;
  unknown.inputs = {"zz"};
  CHECK_THROWS_AS(total_mi(ds, unknown), ValidationError);

  PipelineConfig no_inputs = cfg;
  no_inputs.inputs = {};
  CHECK_THROWS_AS(total_mi(ds, no_inputs), ValidationError);

  PipelineConfig no_outputs = cfg;
  no_outputs.outputs = {};
  CHECK_THROWS_AS(total_mi(ds, no_outputs), ValidationError);

  PipelineConfig dup = cfg;
  dup.inputs = {"a", "a"};
  CHECK_THROWS_AS(total_mi(ds, dup), ValidationError);
}

TEST_CASE("the six-variable cap is enforced") {
  std::vector<std::string> names;
  std::vector<std::vector<double>> cols;
  for (int k = 0; k < 7; ++k) {
    names.push_back("v" + std::to_string(k));
    cols.push_back(uniform_column(40, 200 + static_cast<std::uint64_t>(k)));
  }
  const auto ds = make_dataset(names, cols);
  PipelineConfig cfg;
  cfg.inputs = {"v0", "v1", "v2", "v3", "v4", "v5"};
  cfg.outputs = {"v6"};
  cfg.bins = 2;
  CHECK_THROWS_AS(total_mi(ds, cfg), ValidationError);
}

TEST_CASE("constant columns are refused with the column named") {
  const auto ds = make_dataset(
      {"a", "y"},
      {std::vector<double>(30, 2.5), uniform_column(30, 211)});
  PipelineConfig cfg;
  cfg.inputs = {"a"};
  cfg.outputs = {"y"};
  CHECK_THROWS_WITH_AS(total_mi(ds, cfg), doctest::Contains("'a'"),
                       NumericError);
}

TEST_CASE("leave_one_out charges each input for the MI it carries") {
  const std::size_t n = 3000;
  const auto a = uniform_column(n, 131);
  const auto noise = uniform_column(n, 137);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = a[i] * a[i];
  const auto ds = make_dataset({"a", "noise", "y"}, {a, noise, y});

  PipelineConfig cfg;
  cfg.inputs = {"a", "noise"};
  cfg.outputs = {"y"};
  // Coarse bins on purpose: the full run smooths a 3-D joint while the
  // reduced run smooths a 2-D one, and that bandwidth mismatch biases the
  // difference by roughly -0.1 bits at 5+ bins no matter the sample size.
  cfg.bins = 3;

  const auto report = leave_one_out(ds, cfg);

  REQUIRE(report.per_input.size() == 2);
  CHECK(report.per_input[0].name == "a");
  CHECK(report.per_input[1].name == "noise");

  // The output depends on a alone: dropping the independent noise column
  // barely moves the score, dropping a collapses it.
  const auto& drop_a = report.per_input[0];
  const auto& drop_noise = report.per_input[1];
  CHECK(std::abs(drop_noise.sensitivity_bits) <= 0.05);
  CHECK(drop_a.sensitivity_bits > 0.5);
  CHECK(report.ranking.front() == "a");

  // Stored sensitivities are exactly the stated differences.
  for (const auto& e : report.per_input) {
    CHECK(e.sensitivity_bits ==
          report.full_mi.raw_bits - e.mi_without.raw_bits);
    CHECK(e.sensitivity_normalized ==
          e.sensitivity_bits / report.full_mi.raw_bits);
  }

  // Ranking is a permutation of the inputs.
  auto sorted = report.ranking;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<std::string>{"a", "noise"});
}

TEST_CASE("duplicated inputs expose their redundancy, ties break by column") {
  // The grouped score sums single-variable entropies, so a duplicated input
  // is NOT free to remove: dropping either copy forfeits one whole marginal
  // entropy (minus what kernel smoothing leaks off the diagonal), and both
  // copies score identically.
  const std::size_t n = 2500;
  const auto a = uniform_column(n, 139);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = a[i] * a[i];
  const auto ds = make_dataset({"a", "a2", "y"}, {a, a, y});

  PipelineConfig cfg;
  cfg.inputs = {"a", "a2"};
  cfg.outputs = {"y"};
  cfg.bins = 5;

  const auto report = leave_one_out(ds, cfg);
  const double h_single = std::log2(5.0);

  REQUIRE(report.per_input.size() == 2);
  const double s0 = report.per_input[0].sensitivity_bits;
  const double s1 = report.per_input[1].sensitivity_bits;
  CHECK(s0 > 0.5);
  CHECK(s0 <= h_single);
  // Identical columns produce identical reduced runs, hence an exact tie.
  CHECK(s0 == s1);
  // Equal scores fall back to dataset column order.
  CHECK(report.ranking == std::vector<std::string>{"a", "a2"});
}

TEST_CASE("leave_one_out needs at least two inputs") {
  const auto ds = make_dataset(
      {"a", "y"}, {uniform_column(40, 149), uniform_column(40, 151)});
  PipelineConfig cfg;
  cfg.inputs = {"a"};
  cfg.outputs = {"y"};
  CHECK_THROWS_AS(leave_one_out(ds, cfg), ValidationError);
}

TEST_CASE("reports are bit-identical across repeated runs") {
  const std::size_t n = 600;
  const auto a = uniform_column(n, 157);
  const auto b = uniform_column(n, 163);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = a[i] + b[i] * b[i];
  const auto ds = make_dataset({"a", "b", "y"}, {a, b, y});

  PipelineConfig cfg;
  cfg.inputs = {"a", "b"};
  cfg.outputs = {"y"};
  cfg.bins = 6;

  const auto r1 = leave_one_out(ds, cfg);
  const auto r2 = leave_one_out(ds, cfg);
  CHECK(mi_equal(r1.full_mi, r2.full_mi));
  CHECK(r1.full_bandwidth == r2.full_bandwidth);
  CHECK(r1.ranking == r2.ranking);
  REQUIRE(r1.per_input.size() == r2.per_input.size());
  for (std::size_t k = 0; k < r1.per_input.size(); ++k) {
    CHECK(r1.per_input[k].sensitivity_bits ==
          r2.per_input[k].sensitivity_bits);
    CHECK(mi_equal(r1.per_input[k].mi_without, r2.per_input[k].mi_without));
  }
}

TEST_CASE("affine rescaling of a raw column does not change the report") {
  const std::size_t n = 900;
  const auto a = uniform_column(n, 167);
  const auto b = uniform_column(n, 173);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = a[i] * b[i];

  std::vector<double> a_scaled(a);
  for (auto& v : a_scaled) v = 3.0 * v + 7.0;

  const auto plain = make_dataset({"a", "b", "y"}, {a, b, y});
  const auto scaled = make_dataset({"a", "b", "y"}, {a_scaled, b, y});

  PipelineConfig cfg;
  cfg.inputs = {"a", "b"};
  cfg.outputs = {"y"};
  cfg.bins = 5;

  const auto r1 = leave_one_out(plain, cfg);
  const auto r2 = leave_one_out(scaled, cfg);
  CHECK(std::abs(r1.full_mi.raw_bits - r2.full_mi.raw_bits) <= 1e-12);
  for (std::size_t k = 0; k < r1.per_input.size(); ++k)
    CHECK(std::abs(r1.per_input[k].sensitivity_bits -
                   r2.per_input[k].sensitivity_bits) <= 1e-12);
  CHECK(r1.ranking == r2.ranking);
}
