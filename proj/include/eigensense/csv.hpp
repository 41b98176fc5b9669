#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "eigensense/dataset.hpp"

namespace eigensense {

// Shortest decimal form that round-trips a double (17 significant digits).
std::string format_double(double v);

// Header line of column names, then one comma-separated row per
// observation, every number in round-trip precision.
void write_dataset_csv(const Dataset& ds, std::ostream& out);
void write_dataset_csv(const Dataset& ds, const std::filesystem::path& path);

// Parses what write_dataset_csv emits: plain numeric CSV with a header.
// Malformed content raises IoError naming the line; column roles are left
// unspecified for the caller to assign.
Dataset read_dataset_csv(std::istream& in,
                         std::string_view source_name = "<stream>");
Dataset read_dataset_csv(const std::filesystem::path& path);

}  // namespace eigensense
