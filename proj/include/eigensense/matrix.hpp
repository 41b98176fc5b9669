#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "eigensense/errors.hpp"

namespace eigensense {

// Dense row-major matrix of doubles.  Rows are observations and columns
// are variables everywhere in this library.
class Matrix {
 public:
  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix from_columns(const std::vector<std::vector<double>>& cols) {
    if (cols.empty()) throw ValidationError("matrix needs at least one column");
    const std::size_t rows = cols.front().size();
    for (const auto& c : cols) {
      if (c.size() != rows)
        throw ValidationError("columns have unequal lengths (" +
                              std::to_string(c.size()) + " vs " +
                              std::to_string(rows) + ")");
    }
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) noexcept {
    return data_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const noexcept {
    return data_[r * cols_ + c];
  }

  std::span<const double> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }

  std::vector<double> column(std::size_t c) const {
    if (c >= cols_) throw ValidationError("column index out of range");
    std::vector<double> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

}  // namespace eigensense
