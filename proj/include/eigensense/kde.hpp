#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "eigensense/matrix.hpp"

namespace eigensense {

// Standard Gaussian kernel K(y) = exp(-y^2 / 2) / sqrt(2 pi).
double gaussian_kernel(double y) noexcept;

// Standard normal CDF; evaluated through erfc so deep tails keep precision.
double normal_cdf(double z) noexcept;

struct BandwidthSpec {
  enum class Strategy { kSilverman, kCdfLeastSquares };

  Strategy strategy = Strategy::kSilverman;
  // Objective-evaluation budget, used only by the least-squares search.
  std::size_t budget = 200;
  // Worker threads for the least-squares objective.  Results are identical
  // for every thread count: the sum is always taken over the same fixed
  // chunking, whichever thread computed each chunk.
  int threads = 1;

  static BandwidthSpec silverman() { return {Strategy::kSilverman, 0, 1}; }
  static BandwidthSpec cdf_least_squares(std::size_t budget = 200,
                                         int threads = 1) {
    return {Strategy::kCdfLeastSquares, budget, threads};
  }
};

// Multivariate Gaussian product-kernel density estimator with one fixed
// bandwidth per dimension.  Sample rows are the kernel centers.
class KdeModel {
 public:
  KdeModel(Matrix samples, std::vector<double> bandwidth);

  std::size_t size() const noexcept { return samples_.rows(); }
  std::size_t dimension() const noexcept { return samples_.cols(); }
  const Matrix& samples() const noexcept { return samples_; }
  const std::vector<double>& bandwidth() const noexcept { return bandwidth_; }

  // Density estimate: mean over samples of the product of scaled
  // one-dimensional kernels.
  double pdf(std::span<const double> point) const;

  // Distribution estimate: mean over samples of the product of
  // one-dimensional normal CDFs.  Non-decreasing along every axis.
  double cdf(std::span<const double> point) const;

 private:
  Matrix samples_;
  std::vector<double> bandwidth_;
};

// Fraction of sample rows that are component-wise <= point.
double empirical_cdf(const Matrix& samples, std::span<const double> point);

// Rule-of-thumb bandwidth per dimension:
//   h_k = sigma_k * (4 / ((d + 2) n))^(1 / (d + 4))
// with sigma_k the sample standard deviation (n - 1 denominator).
std::vector<double> silverman_bandwidth(const Matrix& samples);

// Mean squared difference between the model CDF and the empirical CDF over
// the sample points themselves; what cdf_ls_bandwidth minimizes.
double cdf_mse_objective(const Matrix& samples,
                         std::span<const double> bandwidth);

// Bandwidth by least-squares fit of the smoothed CDF to the empirical CDF:
// coordinate-wise golden-section sweeps inside [h_s / 20, 20 h_s] around the
// rule-of-thumb start, stopping when a full sweep improves the objective by
// less than 1e-10 or the evaluation budget runs out.  Never returns a
// bandwidth worse than the start.
std::vector<double> cdf_ls_bandwidth(const Matrix& samples,
                                     std::size_t budget = 200,
                                     int threads = 1);

std::vector<double> select_bandwidth(const Matrix& samples,
                                     const BandwidthSpec& spec);

}  // namespace eigensense
