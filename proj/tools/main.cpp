// Command-line front end: dataset simulation, mutual-information analysis,
// subset tables, and leave-one-out sensitivity reports in text/json/csv.
#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eigensense/csv.hpp"
#include "eigensense/dataset.hpp"
#include "eigensense/errors.hpp"
#include "eigensense/report.hpp"
#include "eigensense/sdmodel.hpp"
#include "eigensense/sensitivity.hpp"
#include "eigensense/version.hpp"

namespace es = eigensense;
using es::ojson;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

es::BandwidthSpec parse_bandwidth(const std::string& flag) {
  if (flag == "silverman") return es::BandwidthSpec::silverman();
  if (flag == "cv-ls") return es::BandwidthSpec::cdf_least_squares();
  if (flag.rfind("cv-ls:", 0) == 0) {
    const std::string digits = flag.substr(6);
    char* end = nullptr;
    const unsigned long long budget = std::strtoull(digits.c_str(), &end, 10);
    if (digits.empty() || end != digits.c_str() + digits.size() || budget == 0)
      throw es::ValidationError("invalid bandwidth budget '" + digits +
                                "' (expected a positive integer)");
    return es::BandwidthSpec::cdf_least_squares(budget);
  }
  throw es::ValidationError("unknown bandwidth '" + flag +
                            "' (expected silverman or cv-ls[:budget])");
}

std::string canonical_bandwidth(const es::BandwidthSpec& spec) {
  if (spec.strategy == es::BandwidthSpec::Strategy::kSilverman)
    return "silverman";
  return "cv-ls:" + std::to_string(spec.budget);
}

// Loads the dataset and derives y_max when a command asks for it by name.
es::Dataset load_dataset(const std::string& path,
                         const std::vector<std::string>& wanted) {
  es::Dataset ds = es::read_dataset_csv(std::filesystem::path(path));
  const bool wants_ymax =
      std::find(wanted.begin(), wanted.end(), "y_max") != wanted.end();
  if (wants_ymax && !ds.column_index("y_max")) {
    if (!ds.column_index("y1") || !ds.column_index("y2"))
      throw es::ValidationError(
          "column 'y_max' is derived from y1 and y2, which are missing");
    es::materialize_ymax(ds);
  }
  return ds;
}

// Inputs default to every column that is neither an output nor part of the
// eigenvalue block when y_max is analyzed (the eigenvalues are what y_max
// is made of, not model inputs).
std::vector<std::string> default_inputs(const es::Dataset& ds,
                                        const std::vector<std::string>& outputs) {
  std::set<std::string> excluded(outputs.begin(), outputs.end());
  if (excluded.count("y_max") || excluded.count("y1") || excluded.count("y2")) {
    excluded.insert({"y1", "y2", "y_max"});
  }
  std::vector<std::string> inputs;
  for (const auto& col : ds.columns())
    if (!excluded.count(col.name)) inputs.push_back(col.name);
  if (inputs.empty())
    throw es::ValidationError(
        "no input columns left after excluding the outputs; pass --inputs");
  return inputs;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f)
    throw es::IoError("cannot open '" + out_path + "' for writing");
  f << text;
  f.flush();
  if (!f) throw es::IoError("failed writing '" + out_path + "'");
}

std::string join(const std::vector<std::string>& names, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += sep;
    out += names[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateOptions {
  std::uint64_t samples = 12000;
  std::uint64_t seed = 42;
  std::string out;
};

int cmd_simulate(const SimulateOptions& o) {
  const es::Dataset ds =
      es::generate_dataset(static_cast<std::size_t>(o.samples), o.seed);
  if (o.out.empty()) {
    es::write_dataset_csv(ds, std::cout);
  } else {
    es::write_dataset_csv(ds, std::filesystem::path(o.out));
  }
  return 0;
}

// ---------------------------------------------------------------------------
// shared analysis plumbing

struct AnalysisOptions {
  std::string input;
  std::vector<std::string> left;     // mi
  std::vector<std::string> right;    // mi
  std::vector<std::string> inputs;   // sensitivity, table
  std::vector<std::string> outputs;  // sensitivity, table
  int bins = 10;
  std::string bandwidth = "silverman";
  double span = 1.1;
  int threads = 1;
  std::string format = "text";
  std::string out;
};

ojson analysis_config(const AnalysisOptions& o, const es::BandwidthSpec& bw,
                      const std::vector<std::string>& inputs,
                      const std::vector<std::string>& outputs) {
  ojson config;
  config["input"] = o.input;
  config["inputs"] = inputs;
  config["outputs"] = outputs;
  config["bins"] = o.bins;
  config["bandwidth"] = canonical_bandwidth(bw);
  config["span"] = o.span;
  config["format"] = o.format;
  if (!o.out.empty()) config["out"] = o.out;
  // --threads is deliberately absent: results are thread-count-invariant,
  // so the worker count is an execution detail on par with the duration.
  return config;
}

es::RunManifest make_manifest(const std::string& command,
                              const AnalysisOptions& o, ojson config) {
  es::RunManifest m;
  m.command = command;
  m.version = es::kVersion;
  m.config = std::move(config);
  m.input_path = o.input;
  m.input_digest = es::fnv1a64_file(o.input);
  return m;
}

std::string manifest_text(const es::RunManifest& m) {
  std::ostringstream out;
  out << "manifest\n";
  out << "  command: " << m.command << '\n';
  out << "  version: " << m.version << '\n';
  out << "  input: " << m.input_path << " (fnv1a64:" << m.input_digest << ")\n";
  out << "  config: " << m.config.dump() << '\n';
  out << "  duration_seconds: " << es::format_double(m.duration_seconds)
      << '\n';
  return out.str();
}

std::string manifest_csv_comment(const es::RunManifest& m) {
  std::ostringstream out;
  out << "# command=" << m.command << " version=" << m.version << '\n';
  out << "# input=" << m.input_path << " fnv1a64=" << m.input_digest << '\n';
  out << "# config=" << m.config.dump() << '\n';
  out << "# duration_seconds=" << es::format_double(m.duration_seconds)
      << '\n';
  return out.str();
}

void append_mi_text(std::ostringstream& out, const es::MiResult& mi,
                    double coverage, const char* indent) {
  out << indent << "raw_bits: " << es::format_double(mi.raw_bits) << '\n';
  out << indent << "normalized: " << es::format_double(mi.normalized) << '\n';
  out << indent
      << "joint_entropy_bits: " << es::format_double(mi.joint_entropy_bits)
      << '\n';
  out << indent << "divisor_bits: " << es::format_double(mi.divisor_bits)
      << '\n';
  out << indent << "coverage_mass: " << es::format_double(coverage) << '\n';
  for (const auto& [name, h] : mi.marginal_entropies)
    out << indent << "marginal_entropy_bits " << name << ": "
        << es::format_double(h) << '\n';
}

// Long-format CSV rows carrying every number the JSON report carries.
void append_mi_csv(std::ostringstream& out, const std::string& section,
                   const std::string& owner, const std::string& prefix,
                   const es::MiResult& mi, double coverage) {
  auto row = [&](const std::string& name, const std::string& field,
                 double value) {
    out << section << ',' << name << ',' << field << ','
        << es::format_double(value) << '\n';
  };
  row(owner, prefix + "raw_bits", mi.raw_bits);
  row(owner, prefix + "normalized", mi.normalized);
  row(owner, prefix + "joint_entropy_bits", mi.joint_entropy_bits);
  row(owner, prefix + "divisor_bits", mi.divisor_bits);
  row(owner, prefix + "coverage_mass", coverage);
  for (const auto& [name, h] : mi.marginal_entropies)
    row(owner, prefix + "marginal_entropy_bits." + name, h);
}

// ---------------------------------------------------------------------------
// mi

int cmd_mi(const AnalysisOptions& o) {
  const auto start = Clock::now();
  const es::BandwidthSpec bw = parse_bandwidth(o.bandwidth);

  std::vector<std::string> wanted = o.left;
  wanted.insert(wanted.end(), o.right.begin(), o.right.end());
  const es::Dataset ds = load_dataset(o.input, wanted);

  es::PipelineConfig cfg;
  cfg.inputs = o.left;
  cfg.outputs = o.right;
  cfg.bins = o.bins;
  cfg.span = o.span;
  cfg.bandwidth = bw;
  cfg.threads = o.threads;
  const es::PipelineRun run = es::run_pipeline(ds, cfg);

  es::RunManifest manifest =
      make_manifest("mi", o, analysis_config(o, bw, o.left, o.right));
  manifest.duration_seconds = seconds_since(start);

  if (o.format == "json") {
    ojson j;
    j["manifest"] = es::manifest_json(manifest);
    j["mi"] = es::mi_json(run.mi, run.coverage_mass);
    emit(j.dump(2) + "\n", o.out);
  } else if (o.format == "csv") {
    std::ostringstream out;
    out << manifest_csv_comment(manifest);
    out << "section,name,field,value\n";
    append_mi_csv(out, "mi", join(o.left, " & ") + " ; " + join(o.right, " & "),
                  "", run.mi, run.coverage_mass);
    emit(out.str(), o.out);
  } else {
    std::ostringstream out;
    out << "mutual information\n";
    out << "  left: " << join(o.left, ", ") << '\n';
    out << "  right: " << join(o.right, ", ") << '\n';
    append_mi_text(out, run.mi, run.coverage_mass, "  ");
    out << manifest_text(manifest);
    emit(out.str(), o.out);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// sensitivity

int cmd_sensitivity(const AnalysisOptions& o) {
  const auto start = Clock::now();
  const es::BandwidthSpec bw = parse_bandwidth(o.bandwidth);

  std::vector<std::string> wanted = o.inputs;
  wanted.insert(wanted.end(), o.outputs.begin(), o.outputs.end());
  const es::Dataset ds = load_dataset(o.input, wanted);
  const std::vector<std::string> inputs =
      o.inputs.empty() ? default_inputs(ds, o.outputs) : o.inputs;

  es::PipelineConfig cfg;
  cfg.inputs = inputs;
  cfg.outputs = o.outputs;
  cfg.bins = o.bins;
  cfg.span = o.span;
  cfg.bandwidth = bw;
  cfg.threads = o.threads;
  const es::SensitivityReport report = es::leave_one_out(ds, cfg);

  es::RunManifest manifest = make_manifest(
      "sensitivity", o, analysis_config(o, bw, inputs, o.outputs));
  manifest.duration_seconds = seconds_since(start);

  if (o.format == "json") {
    emit(es::sensitivity_json(manifest, report).dump(2) + "\n", o.out);
  } else if (o.format == "csv") {
    std::ostringstream out;
    out << manifest_csv_comment(manifest);
    out << "section,name,field,value\n";
    append_mi_csv(out, "full_mi", "", "", report.full_mi,
                  report.full_coverage_mass);
    for (const auto& e : report.per_input) {
      append_mi_csv(out, "per_input", e.name, "mi_without_", e.mi_without,
                    e.coverage_mass);
      out << "per_input," << e.name << ",sensitivity_bits,"
          << es::format_double(e.sensitivity_bits) << '\n';
      out << "per_input," << e.name << ",sensitivity_normalized,"
          << es::format_double(e.sensitivity_normalized) << '\n';
    }
    for (std::size_t r = 0; r < report.ranking.size(); ++r)
      out << "ranking," << report.ranking[r] << ",rank," << (r + 1) << '\n';
    emit(out.str(), o.out);
  } else {
    std::ostringstream out;
    out << "full mutual information (" << join(inputs, ", ") << " ; "
        << join(o.outputs, ", ") << ")\n";
    append_mi_text(out, report.full_mi, report.full_coverage_mass, "  ");
    out << "sensitivity (leave-one-out)\n";
    for (std::size_t r = 0; r < report.ranking.size(); ++r) {
      const auto& name = report.ranking[r];
      const auto it =
          std::find_if(report.per_input.begin(), report.per_input.end(),
                       [&](const auto& e) { return e.name == name; });
      out << "  rank " << (r + 1) << ": " << name << "  sensitivity_bits="
          << es::format_double(it->sensitivity_bits)
          << "  sensitivity_normalized="
          << es::format_double(it->sensitivity_normalized) << '\n';
    }
    out << "without each input\n";
    for (const auto& e : report.per_input) {
      out << "  " << e.name << ":\n";
      append_mi_text(out, e.mi_without, e.coverage_mass, "    ");
    }
    out << manifest_text(manifest);
    emit(out.str(), o.out);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// table

bool next_combination(std::vector<std::size_t>& comb, std::size_t n) {
  const std::size_t k = comb.size();
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (comb[i] < n - k + i) {
      ++comb[i];
      for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// Non-empty subsets ordered by size, then by member position, matching the
// usual presentation x1, x2, x3, x1 & x2, x1 & x3, x2 & x3, x1 & x2 & x3.
std::vector<std::vector<std::string>> input_subsets(
    const std::vector<std::string>& inputs) {
  std::vector<std::vector<std::string>> out;
  for (std::size_t size = 1; size <= inputs.size(); ++size) {
    std::vector<std::size_t> comb(size);
    std::iota(comb.begin(), comb.end(), std::size_t{0});
    do {
      std::vector<std::string> subset;
      subset.reserve(size);
      for (std::size_t i : comb) subset.push_back(inputs[i]);
      out.push_back(std::move(subset));
    } while (next_combination(comb, inputs.size()));
  }
  return out;
}

int cmd_table(const AnalysisOptions& o) {
  const auto start = Clock::now();
  const es::BandwidthSpec bw = parse_bandwidth(o.bandwidth);

  std::vector<std::string> wanted = o.inputs;
  wanted.insert(wanted.end(), o.outputs.begin(), o.outputs.end());
  const es::Dataset ds = load_dataset(o.input, wanted);
  const std::vector<std::string> inputs =
      o.inputs.empty() ? default_inputs(ds, o.outputs) : o.inputs;
  if (inputs.size() > 4)
    throw es::ValidationError(
        "table supports at most 4 inputs (" + std::to_string(inputs.size()) +
        " given); larger sets push subset grids past the variable cap");

  const auto subsets = input_subsets(inputs);
  struct TableEntry {
    std::string label;
    std::vector<std::string> subset;
    es::PipelineRun run;
  };
  std::vector<TableEntry> entries;
  for (const auto& subset : subsets) {
    es::PipelineConfig cfg;
    cfg.inputs = subset;
    cfg.outputs = o.outputs;
    cfg.bins = o.bins;
    cfg.span = o.span;
    cfg.bandwidth = bw;
    cfg.threads = o.threads;
    entries.push_back(
        {join(subset, " & "), subset, es::run_pipeline(ds, cfg)});
  }

  es::RunManifest manifest =
      make_manifest("table", o, analysis_config(o, bw, inputs, o.outputs));
  manifest.duration_seconds = seconds_since(start);

  if (o.format == "json") {
    ojson j;
    j["manifest"] = es::manifest_json(manifest);
    j["outputs"] = o.outputs;
    ojson rows = ojson::array();
    for (const auto& e : entries) {
      ojson row;
      row["inputs"] = e.subset;
      row["label"] = e.label;
      row["mi"] = es::mi_json(e.run.mi, e.run.coverage_mass);
      rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    emit(j.dump(2) + "\n", o.out);
  } else if (o.format == "csv") {
    std::ostringstream out;
    out << manifest_csv_comment(manifest);
    out << "section,name,field,value\n";
    for (const auto& e : entries)
      append_mi_csv(out, "entry", e.label, "", e.run.mi,
                    e.run.coverage_mass);
    emit(out.str(), o.out);
  } else {
    std::ostringstream out;
    out << "mutual information with outputs " << join(o.outputs, ", ")
        << " (normalized)\n";
    // Wide layout: one column per input subset.
    std::vector<std::string> cells;
    std::size_t width = 0;
    for (const auto& e : entries) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.4f", e.run.mi.normalized);
      cells.emplace_back(buf);
      width = std::max({width, e.label.size(), cells.back().size()});
    }
    for (const auto& e : entries)
      out << "  " << std::string(width - e.label.size(), ' ') << e.label;
    out << '\n';
    for (std::size_t i = 0; i < cells.size(); ++i)
      out << "  " << std::string(width - cells[i].size(), ' ') << cells[i];
    out << '\n';
    out << "details\n";
    for (const auto& e : entries) {
      out << "  " << e.label << ":\n";
      append_mi_text(out, e.run.mi, e.run.coverage_mass, "    ");
    }
    out << manifest_text(manifest);
    emit(out.str(), o.out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Measures how strongly a dynamic model's eigenvalues depend on its "
      "inputs: kernel-smoothed joint distributions, grid entropies, "
      "generalized mutual information, and leave-one-out sensitivity."};
  app.require_subcommand(1);
  app.set_version_flag("--version", eigensense::kVersion);

  SimulateOptions sim;
  auto* simulate = app.add_subcommand(
      "simulate", "Sample the two-stock model and write the dataset CSV");
  simulate->add_option("--samples", sim.samples, "Number of rows to draw")
      ->capture_default_str();
  simulate->add_option("--seed", sim.seed, "Random seed")
      ->capture_default_str();
  simulate->add_option("--out", sim.out, "Output path (default: stdout)");

  const auto add_analysis_flags = [](CLI::App* cmd, AnalysisOptions& o) {
    cmd->add_option("--input", o.input, "Dataset CSV to analyze")->required();
    cmd->add_option("--bins", o.bins, "Bins per grid axis")
        ->capture_default_str();
    cmd->add_option("--bandwidth", o.bandwidth,
                    "silverman or cv-ls[:budget]")
        ->capture_default_str();
    cmd->add_option("--span", o.span,
                    "Grid upper edge on the normalized scale")
        ->capture_default_str();
    cmd->add_option("--threads", o.threads, "Worker threads for grid builds")
        ->capture_default_str();
    cmd->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--out", o.out, "Output path (default: stdout)");
  };

  AnalysisOptions mi_opts;
  auto* mi = app.add_subcommand(
      "mi", "Mutual information between two groups of columns");
  mi->add_option("--left", mi_opts.left, "Left variable group")
      ->required()
      ->delimiter(',');
  mi->add_option("--right", mi_opts.right, "Right variable group")
      ->required()
      ->delimiter(',');
  add_analysis_flags(mi, mi_opts);

  AnalysisOptions sens_opts;
  auto* sensitivity = app.add_subcommand(
      "sensitivity", "Leave-one-out input sensitivity report");
  sensitivity
      ->add_option("--inputs", sens_opts.inputs,
                   "Input columns (default: every non-output column)")
      ->delimiter(',');
  sensitivity->add_option("--outputs", sens_opts.outputs, "Output columns")
      ->required()
      ->delimiter(',');
  add_analysis_flags(sensitivity, sens_opts);

  AnalysisOptions table_opts;
  auto* table = app.add_subcommand(
      "table", "Mutual information for every non-empty input subset");
  table
      ->add_option("--inputs", table_opts.inputs,
                   "Input columns (default: every non-output column; max 4)")
      ->delimiter(',');
  table->add_option("--outputs", table_opts.outputs, "Output columns")
      ->required()
      ->delimiter(',');
  add_analysis_flags(table, table_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(sim);
    if (mi->parsed()) return cmd_mi(mi_opts);
    if (sensitivity->parsed()) return cmd_sensitivity(sens_opts);
    if (table->parsed()) return cmd_table(table_opts);
    std::cerr << "error: no subcommand selected\n";
    return 1;
  } catch (const es::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const es::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const es::NumericError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
}
