#include "eigensense/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace eigensense {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_dataset_csv(const Dataset& ds, std::ostream& out) {
  const auto& cols = ds.columns();
  for (std::size_t j = 0; j < cols.size(); ++j)
    out << cols[j].name << (j + 1 < cols.size() ? "," : "");
  out << '\n';
  const Matrix& m = ds.values();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j)
      out << format_double(m(i, j)) << (j + 1 < m.cols() ? "," : "");
    out << '\n';
  }
  if (!out) throw IoError("failed writing dataset CSV");
}

void write_dataset_csv(const Dataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_dataset_csv(ds, out);
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string trimmed(std::string s) {
  const auto is_space = [](unsigned char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && is_space(s.back())) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && is_space(s[start])) ++start;
  return s.substr(start);
}

}  // namespace

Dataset read_dataset_csv(std::istream& in, std::string_view source_name) {
  const std::string source(source_name);
  std::string line;
  if (!std::getline(in, line))
    throw IoError(source + ": empty input, expected a header line");

  std::vector<ColumnInfo> columns;
  for (auto& name : split_fields(line)) {
    columns.push_back({trimmed(name), VarRole::kUnspecified});
  }

  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trimmed(line);
    if (stripped.empty()) continue;
    const auto fields = split_fields(stripped);
    if (fields.size() != columns.size())
      throw IoError(source + ":" + std::to_string(line_no) + ": expected " +
                    std::to_string(columns.size()) + " fields, got " +
                    std::to_string(fields.size()));
    std::vector<double> row(fields.size());
    for (std::size_t j = 0; j < fields.size(); ++j) {
      const std::string cell = trimmed(fields[j]);
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (cell.empty() || end != cell.c_str() + cell.size())
        throw IoError(source + ":" + std::to_string(line_no) +
                      ": cannot parse '" + cell + "' as a number");
      if (!std::isfinite(v))
        throw IoError(source + ":" + std::to_string(line_no) +
                      ": non-finite value '" + cell + "'");
      row[j] = v;
    }
    rows.push_back(std::move(row));
  }

  Matrix values(rows.size(), columns.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < columns.size(); ++j) values(i, j) = rows[i][j];
  return Dataset(std::move(columns), std::move(values));
}

Dataset read_dataset_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return read_dataset_csv(in, path.string());
}

}  // namespace eigensense
