// Python bindings for the sensitivity toolkit: dataset simulation and I/O,
// kernel density estimation, and the mutual-information pipeline.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "eigensense/csv.hpp"
#include "eigensense/dataset.hpp"
#include "eigensense/errors.hpp"
#include "eigensense/grid.hpp"
#include "eigensense/infotheory.hpp"
#include "eigensense/kde.hpp"
#include "eigensense/sdmodel.hpp"
#include "eigensense/sensitivity.hpp"
#include "eigensense/version.hpp"

namespace py = pybind11;
namespace es = eigensense;

namespace {

es::Matrix to_matrix(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw es::ValidationError("samples must be non-empty");
  es::Matrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols())
      throw es::ValidationError("sample rows have unequal lengths");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

es::BandwidthSpec make_spec(const std::string& bandwidth, std::size_t budget,
                            int threads) {
  if (bandwidth == "silverman") return es::BandwidthSpec::silverman();
  if (bandwidth == "cv-ls")
    return es::BandwidthSpec::cdf_least_squares(budget, threads);
  throw es::ValidationError("unknown bandwidth '" + bandwidth +
                            "' (expected silverman or cv-ls)");
}

py::dict mi_dict(const es::MiResult& mi, double coverage_mass) {
  py::dict marginals;
  for (const auto& [name, h] : mi.marginal_entropies)
    marginals[py::str(name)] = h;
  py::dict out;
  out["raw_bits"] = mi.raw_bits;
  out["normalized"] = mi.normalized;
  out["joint_entropy_bits"] = mi.joint_entropy_bits;
  out["divisor_bits"] = mi.divisor_bits;
  out["marginal_entropies"] = marginals;
  out["coverage_mass"] = coverage_mass;
  return out;
}

es::PipelineConfig make_config(const std::vector<std::string>& inputs,
                               const std::vector<std::string>& outputs,
                               int bins, const std::string& bandwidth,
                               std::size_t budget, double span, int threads) {
  es::PipelineConfig cfg;
  cfg.inputs = inputs;
  cfg.outputs = outputs;
  cfg.bins = bins;
  cfg.span = span;
  cfg.bandwidth = make_spec(bandwidth, budget, threads);
  cfg.threads = threads;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Eigenvalue sensitivity toolkit: Gaussian-kernel density estimation, "
      "gridded joint distributions, generalized mutual information, and "
      "leave-one-out input sensitivity.";
  m.attr("__version__") = es::kVersion;

  py::register_exception<es::ValidationError>(m, "ValidationError",
                                              PyExc_ValueError);
  py::register_exception<es::IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<es::NumericError>(m, "NumericError",
                                           PyExc_ArithmeticError);

  py::class_<es::Dataset>(m, "Dataset")
      .def_property_readonly("n_rows", &es::Dataset::n_rows)
      .def_property_readonly("n_cols", &es::Dataset::n_cols)
      .def_property_readonly("column_names",
                             [](const es::Dataset& ds) {
                               std::vector<std::string> names;
                               for (const auto& c : ds.columns())
                                 names.push_back(c.name);
                               return names;
                             })
      .def("column",
           [](const es::Dataset& ds, const std::string& name) {
             return ds.column_values(name);
           },
           py::arg("name"), "Values of one column, as a list")
      .def("add_column",
           [](es::Dataset& ds, const std::string& name,
              const std::vector<double>& values) {
             ds.add_column({name, es::VarRole::kUnspecified}, values);
           },
           py::arg("name"), py::arg("values"))
      .def("write_csv",
           [](const es::Dataset& ds, const std::string& path) {
             es::write_dataset_csv(ds, std::filesystem::path(path));
           },
           py::arg("path"))
      .def_static("read_csv",
                  [](const std::string& path) {
                    return es::read_dataset_csv(std::filesystem::path(path));
                  },
                  py::arg("path"))
      .def("__repr__", [](const es::Dataset& ds) {
        return "Dataset(" + std::to_string(ds.n_rows()) + " rows, " +
               std::to_string(ds.n_cols()) + " columns)";
      });

  m.def("simulate", &es::generate_dataset, py::arg("samples"),
        py::arg("seed") = 42,
        "Sample the two-stock model: uniform inputs x1, x2, x3 and the "
        "Jacobian eigenvalues y1, y2");

  m.def("derive_ymax", &es::materialize_ymax, py::arg("dataset"),
        "Append the dominant-eigenvalue column y_max (row-wise max of "
        "y1, y2); returns False when it already exists");

  py::class_<es::KdeModel>(m, "KdeModel")
      .def(py::init([](const std::vector<std::vector<double>>& samples,
                       const std::vector<double>& bandwidth) {
             return es::KdeModel(to_matrix(samples), bandwidth);
           }),
           py::arg("samples"), py::arg("bandwidth"))
      .def_property_readonly("dimension", &es::KdeModel::dimension)
      .def_property_readonly("size", &es::KdeModel::size)
      .def_property_readonly("bandwidth", &es::KdeModel::bandwidth)
      .def("pdf",
           [](const es::KdeModel& kde, const std::vector<double>& point) {
             return kde.pdf(point);
           },
           py::arg("point"))
      .def("cdf",
           [](const es::KdeModel& kde, const std::vector<double>& point) {
             return kde.cdf(point);
           },
           py::arg("point"));

  m.def("silverman_bandwidth",
        [](const std::vector<std::vector<double>>& samples) {
          return es::silverman_bandwidth(to_matrix(samples));
        },
        py::arg("samples"));

  m.def("cdf_ls_bandwidth",
        [](const std::vector<std::vector<double>>& samples,
           std::size_t budget, int threads) {
          return es::cdf_ls_bandwidth(to_matrix(samples), budget, threads);
        },
        py::arg("samples"), py::arg("budget") = 200, py::arg("threads") = 1);

  m.def("entropy", [](const std::vector<double>& p) { return es::entropy(p); },
        py::arg("probabilities"), "Shannon entropy in bits");

  m.def("mi",
        [](const es::Dataset& ds, const std::vector<std::string>& inputs,
           const std::vector<std::string>& outputs, int bins,
           const std::string& bandwidth, std::size_t budget, double span,
           int threads) {
          const es::PipelineRun run = es::run_pipeline(
              ds, make_config(inputs, outputs, bins, bandwidth, budget, span,
                              threads));
          return mi_dict(run.mi, run.coverage_mass);
        },
        py::arg("dataset"), py::arg("inputs"), py::arg("outputs"),
        py::arg("bins") = 10, py::arg("bandwidth") = "silverman",
        py::arg("budget") = 200, py::arg("span") = 1.1, py::arg("threads") = 1,
        "Generalized mutual information between the input and output "
        "columns over a kernel-smoothed grid");

  m.def("sensitivity",
        [](const es::Dataset& ds, const std::vector<std::string>& inputs,
           const std::vector<std::string>& outputs, int bins,
           const std::string& bandwidth, std::size_t budget, double span,
           int threads) {
          const es::SensitivityReport report = es::leave_one_out(
              ds, make_config(inputs, outputs, bins, bandwidth, budget, span,
                              threads));
          py::list per_input;
          for (const auto& e : report.per_input) {
            py::dict entry;
            entry["name"] = e.name;
            entry["mi_without"] = mi_dict(e.mi_without, e.coverage_mass);
            entry["sensitivity_bits"] = e.sensitivity_bits;
            entry["sensitivity_normalized"] = e.sensitivity_normalized;
            per_input.append(std::move(entry));
          }
          py::dict out;
          out["full_mi"] = mi_dict(report.full_mi, report.full_coverage_mass);
          out["per_input"] = std::move(per_input);
          out["ranking"] = report.ranking;
          return out;
        },
        py::arg("dataset"), py::arg("inputs"), py::arg("outputs"),
        py::arg("bins") = 10, py::arg("bandwidth") = "silverman",
        py::arg("budget") = 200, py::arg("span") = 1.1, py::arg("threads") = 1,
        "Leave-one-out sensitivity of the outputs to each input");
}
