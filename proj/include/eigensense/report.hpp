#pragma once

#include <filesystem>
#include <span>
#include <string>

#include <json.hpp>

#include "eigensense/infotheory.hpp"
#include "eigensense/sensitivity.hpp"

namespace eigensense {

using ojson = nlohmann::ordered_json;

// Everything needed to reproduce a run: the subcommand, the tool version,
// the fully resolved configuration, and a digest of the input file.
struct RunManifest {
  std::string command;
  std::string version;
  ojson config = ojson::object();
  std::string input_path;    // empty when the data was generated in-process
  std::string input_digest;  // 16 hex digits of FNV-1a 64, empty when no file
  double duration_seconds = 0.0;
};

// FNV-1a 64-bit digest, as a 16-digit lowercase hex string.
std::string fnv1a64_hex(std::span<const unsigned char> bytes);

// Digest of a file's bytes; IoError when it cannot be read.
std::string fnv1a64_file(const std::filesystem::path& path);

ojson manifest_json(const RunManifest& manifest);

// MI numbers plus the grid coverage diagnostic, one self-contained object.
ojson mi_json(const MiResult& mi, double coverage_mass);

// Full leave-one-out report: manifest, full-set MI, one record per input,
// and the sensitivity ranking.
ojson sensitivity_json(const RunManifest& manifest,
                       const SensitivityReport& report);

}  // namespace eigensense
