#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eigensense/matrix.hpp"

namespace eigensense {

enum class VarRole { kInput, kOutput, kUnspecified };

struct ColumnInfo {
  std::string name;
  VarRole role = VarRole::kUnspecified;
};

// Column-labelled sample matrix.  Rows are observations; every value must
// be finite and there must be at least two rows.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::vector<ColumnInfo> columns, Matrix values);

  std::size_t n_rows() const noexcept { return values_.rows(); }
  std::size_t n_cols() const noexcept { return values_.cols(); }

  const std::vector<ColumnInfo>& columns() const noexcept { return columns_; }
  const Matrix& values() const noexcept { return values_; }

  std::optional<std::size_t> column_index(std::string_view name) const;

  // Like column_index, but throws ValidationError for unknown names.
  std::size_t require_column(std::string_view name) const;

  std::vector<double> column_values(std::string_view name) const;

  void add_column(ColumnInfo info, const std::vector<double>& values);
  void set_role(std::string_view name, VarRole role);

 private:
  std::vector<ColumnInfo> columns_;
  Matrix values_;
};

// Appends the derived column "y_max" (row-wise max of y1 and y2, the
// dominant eigenvalue) when the dataset has y1 and y2 but no y_max yet.
// Returns true if the column was added.
bool materialize_ymax(Dataset& ds);

}  // namespace eigensense
