#include "eigensense/sdmodel.hpp"

#include <cmath>
#include <string>

#include "eigensense/rng.hpp"

namespace eigensense {

std::vector<ParameterSample> sample_parameters(std::size_t count,
                                               std::uint64_t seed) {
  if (count == 0)
    throw ValidationError("sample count must be at least 1");
  std::vector<ParameterSample> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto eng = row_engine(seed, i);
    // Braced init fixes the draw order x1, x2, x3.
    out.push_back(ParameterSample{uniform01(eng), uniform01(eng), uniform01(eng)});
  }
  return out;
}

Gains gains(const ParameterSample& p) noexcept {
  return {p.x1 * p.x2 * p.x3, p.x1 * p.x2, p.x1 * p.x3};
}

Jacobian2x2 jacobian(const Gains& g) noexcept {
  return {g.g11, g.g12, g.g21, 0.0};
}

EigenPair eigenvalues(const Jacobian2x2& j) {
  const double trace = j.j11 + j.j22;
  const double diff = j.j11 - j.j22;
  const double disc = diff * diff + 4.0 * j.j12 * j.j21;
  if (disc < 0.0)
    throw NumericError("complex eigenvalue pair (discriminant " +
                       std::to_string(disc) + ")");
  const double root = std::sqrt(disc);
  return {(trace - root) / 2.0, (trace + root) / 2.0};
}

Dataset generate_dataset(std::size_t count, std::uint64_t seed) {
  if (count < 2)
    throw ValidationError("dataset generation needs count >= 2, got " +
                          std::to_string(count));
  const auto params = sample_parameters(count, seed);
  Matrix values(count, 5);
  for (std::size_t i = 0; i < count; ++i) {
    const auto& p = params[i];
    const EigenPair e = eigenvalues(jacobian(gains(p)));
    values(i, 0) = p.x1;
    values(i, 1) = p.x2;
    values(i, 2) = p.x3;
    values(i, 3) = e.y1;
    values(i, 4) = e.y2;
  }
  std::vector<ColumnInfo> columns = {{"x1", VarRole::kInput},
                                     {"x2", VarRole::kInput},
                                     {"x3", VarRole::kInput},
                                     {"y1", VarRole::kOutput},
                                     {"y2", VarRole::kOutput}};
  return Dataset(std::move(columns), std::move(values));
}

}  // namespace eigensense
