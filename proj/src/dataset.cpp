#include "eigensense/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace eigensense {

namespace {

void check_values(const Matrix& values) {
  if (values.rows() < 2)
    throw ValidationError("dataset needs at least 2 rows, got " +
                          std::to_string(values.rows()));
  for (double v : values.data()) {
    if (!std::isfinite(v))
      throw ValidationError("dataset contains a non-finite value");
  }
}

void check_names(const std::vector<ColumnInfo>& columns) {
  std::set<std::string> seen;
  for (const auto& c : columns) {
    if (c.name.empty()) throw ValidationError("column names must be non-empty");
    if (!seen.insert(c.name).second)
      throw ValidationError("duplicate column name '" + c.name + "'");
  }
}

}  // namespace

Dataset::Dataset(std::vector<ColumnInfo> columns, Matrix values)
    : columns_(std::move(columns)), values_(std::move(values)) {
  if (columns_.size() != values_.cols())
    throw ValidationError("column labels (" + std::to_string(columns_.size()) +
                          ") do not match matrix width (" +
                          std::to_string(values_.cols()) + ")");
  check_names(columns_);
  check_values(values_);
}

std::optional<std::size_t> Dataset::column_index(std::string_view name) const {
  for (std::size_t j = 0; j < columns_.size(); ++j)
    if (columns_[j].name == name) return j;
  return std::nullopt;
}

std::size_t Dataset::require_column(std::string_view name) const {
  if (auto j = column_index(name)) return *j;
  throw ValidationError("unknown column '" + std::string(name) + "'");
}

std::vector<double> Dataset::column_values(std::string_view name) const {
  return values_.column(require_column(name));
}

void Dataset::add_column(ColumnInfo info, const std::vector<double>& values) {
  if (column_index(info.name))
    throw ValidationError("duplicate column name '" + info.name + "'");
  if (values.size() != values_.rows())
    throw ValidationError("new column has " + std::to_string(values.size()) +
                          " values, dataset has " +
                          std::to_string(values_.rows()) + " rows");
  for (double v : values) {
    if (!std::isfinite(v))
      throw ValidationError("column '" + info.name +
                            "' contains a non-finite value");
  }
  Matrix wider(values_.rows(), values_.cols() + 1);
  for (std::size_t r = 0; r < values_.rows(); ++r) {
    for (std::size_t c = 0; c < values_.cols(); ++c) wider(r, c) = values_(r, c);
    wider(r, values_.cols()) = values[r];
  }
  values_ = std::move(wider);
  columns_.push_back(std::move(info));
}

void Dataset::set_role(std::string_view name, VarRole role) {
  columns_[require_column(name)].role = role;
}

bool materialize_ymax(Dataset& ds) {
  if (ds.column_index("y_max")) return false;
  const auto y1 = ds.column_values("y1");
  const auto y2 = ds.column_values("y2");
  std::vector<double> ymax(y1.size());
  for (std::size_t i = 0; i < y1.size(); ++i) ymax[i] = std::max(y1[i], y2[i]);
  ds.add_column({"y_max", VarRole::kOutput}, ymax);
  return true;
}

}  // namespace eigensense
