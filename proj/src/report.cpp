#include "eigensense/report.hpp"

#include <cstdio>
#include <fstream>
#include <vector>

#include "eigensense/errors.hpp"

namespace eigensense {

std::string fnv1a64_hex(std::span<const unsigned char> bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    hash ^= b;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

std::string fnv1a64_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for hashing");
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
  return fnv1a64_hex(bytes);
}

ojson manifest_json(const RunManifest& manifest) {
  ojson j;
  j["command"] = manifest.command;
  j["version"] = manifest.version;
  j["config"] = manifest.config;
  if (!manifest.input_path.empty()) {
    j["input"] = {{"path", manifest.input_path},
                  {"fnv1a64", manifest.input_digest}};
  } else {
    j["input"] = nullptr;
  }
  j["duration_seconds"] = manifest.duration_seconds;
  return j;
}

ojson mi_json(const MiResult& mi, double coverage_mass) {
  ojson j;
  j["raw_bits"] = mi.raw_bits;
  j["normalized"] = mi.normalized;
  j["joint_entropy_bits"] = mi.joint_entropy_bits;
  j["divisor_bits"] = mi.divisor_bits;
  ojson marginals = ojson::object();
  for (const auto& [name, h] : mi.marginal_entropies) marginals[name] = h;
  j["marginal_entropies"] = marginals;
  j["coverage_mass"] = coverage_mass;
  return j;
}

ojson sensitivity_json(const RunManifest& manifest,
                       const SensitivityReport& report) {
  ojson j;
  j["manifest"] = manifest_json(manifest);
  j["full_mi"] = mi_json(report.full_mi, report.full_coverage_mass);
  ojson inputs = ojson::array();
  for (const auto& e : report.per_input) {
    ojson entry;
    entry["name"] = e.name;
    entry["mi_without"] = mi_json(e.mi_without, e.coverage_mass);
    entry["sensitivity_bits"] = e.sensitivity_bits;
    entry["sensitivity_normalized"] = e.sensitivity_normalized;
    inputs.push_back(std::move(entry));
  }
  j["per_input"] = std::move(inputs);
  j["ranking"] = report.ranking;
  return j;
}

}  // namespace eigensense
