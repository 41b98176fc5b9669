#pragma once

#include <span>

namespace eigensense {

// Compensated (Kahan) accumulator.  Long probability and entropy sums run
// over up to 1e7 terms; naive summation would eat the 1e-12 mass tolerances.
class KahanSum {
 public:
  void add(double x) noexcept {
    const double y = x - c_;
    const double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }

  double value() const noexcept { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

inline double kahan_sum(std::span<const double> xs) noexcept {
  KahanSum acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

}  // namespace eigensense
