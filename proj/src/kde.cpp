#include "eigensense/kde.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <thread>

#include "eigensense/errors.hpp"
#include "eigensense/numeric.hpp"

namespace eigensense {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;  // 1 / sqrt(2 pi)
constexpr double kInvSqrt2 = 0.70710678118654752440;    // 1 / sqrt(2)

void check_point(std::size_t dim, std::span<const double> point) {
  if (point.size() != dim)
    throw ValidationError("point has " + std::to_string(point.size()) +
                          " coordinates, estimator has " +
                          std::to_string(dim));
}

// Shared cores so bandwidth search can evaluate candidate bandwidths
// without copying the sample matrix into a temporary model.
double kde_pdf_at(const Matrix& s, std::span<const double> h,
                  std::span<const double> point) {
  KahanSum sum;
  for (std::size_t i = 0; i < s.rows(); ++i) {
    double prod = 1.0;
    for (std::size_t k = 0; k < s.cols(); ++k)
      prod *= gaussian_kernel((point[k] - s(i, k)) / h[k]) / h[k];
    sum.add(prod);
  }
  return sum.value() / static_cast<double>(s.rows());
}

double kde_cdf_at(const Matrix& s, std::span<const double> h,
                  std::span<const double> point) {
  KahanSum sum;
  for (std::size_t i = 0; i < s.rows(); ++i) {
    double prod = 1.0;
    for (std::size_t k = 0; k < s.cols(); ++k)
      prod *= normal_cdf((point[k] - s(i, k)) / h[k]);
    sum.add(prod);
  }
  return sum.value() / static_cast<double>(s.rows());
}

void check_bandwidth(std::size_t dim, const std::vector<double>& h) {
  if (h.size() != dim)
    throw ValidationError("bandwidth has " + std::to_string(h.size()) +
                          " entries for " + std::to_string(dim) +
                          " dimensions");
  for (std::size_t k = 0; k < h.size(); ++k) {
    if (!(h[k] > 0.0) || !std::isfinite(h[k]))
      throw ValidationError("bandwidth for dimension " + std::to_string(k) +
                            " must be positive and finite");
  }
}

}  // namespace

double gaussian_kernel(double y) noexcept {
  return kInvSqrt2Pi * std::exp(-0.5 * y * y);
}

double normal_cdf(double z) noexcept {
  return 0.5 * std::erfc(-z * kInvSqrt2);
}

KdeModel::KdeModel(Matrix samples, std::vector<double> bandwidth)
    : samples_(std::move(samples)), bandwidth_(std::move(bandwidth)) {
  if (samples_.rows() < 1)
    throw ValidationError("estimator needs at least one sample");
  if (samples_.cols() < 1)
    throw ValidationError("estimator needs at least one dimension");
  check_bandwidth(samples_.cols(), bandwidth_);
  for (double v : samples_.data()) {
    if (!std::isfinite(v))
      throw ValidationError("samples contain a non-finite value");
  }
}

double KdeModel::pdf(std::span<const double> point) const {
  check_point(dimension(), point);
  return kde_pdf_at(samples_, bandwidth_, point);
}

double KdeModel::cdf(std::span<const double> point) const {
  check_point(dimension(), point);
  return kde_cdf_at(samples_, bandwidth_, point);
}

double empirical_cdf(const Matrix& samples, std::span<const double> point) {
  if (samples.rows() == 0)
    throw ValidationError("empirical CDF needs at least one sample");
  check_point(samples.cols(), point);
  std::size_t count = 0;
  for (std::size_t i = 0; i < samples.rows(); ++i) {
    bool below = true;
    for (std::size_t k = 0; k < samples.cols() && below; ++k)
      below = samples(i, k) <= point[k];
    count += below ? 1 : 0;
  }
  return static_cast<double>(count) / static_cast<double>(samples.rows());
}

std::vector<double> silverman_bandwidth(const Matrix& samples) {
  const std::size_t n = samples.rows();
  const std::size_t d = samples.cols();
  if (n < 2)
    throw ValidationError("bandwidth selection needs at least 2 samples");
  const double factor =
      std::pow(4.0 / ((static_cast<double>(d) + 2.0) * static_cast<double>(n)),
               1.0 / (static_cast<double>(d) + 4.0));
  std::vector<double> h(d);
  for (std::size_t k = 0; k < d; ++k) {
    KahanSum mean_acc;
    for (std::size_t i = 0; i < n; ++i) mean_acc.add(samples(i, k));
    const double mean = mean_acc.value() / static_cast<double>(n);
    KahanSum ss;
    for (std::size_t i = 0; i < n; ++i) {
      const double dev = samples(i, k) - mean;
      ss.add(dev * dev);
    }
    const double var = ss.value() / static_cast<double>(n - 1);
    if (!(var > 0.0))
      throw NumericError("column " + std::to_string(k) +
                         " has zero variance; bandwidth is undefined");
    h[k] = std::sqrt(var) * factor;
  }
  return h;
}

double cdf_mse_objective(const Matrix& samples,
                         std::span<const double> bandwidth) {
  const std::size_t n = samples.rows();
  KahanSum acc;
  for (std::size_t j = 0; j < n; ++j) {
    const double diff = kde_cdf_at(samples, bandwidth, samples.row(j)) -
                        empirical_cdf(samples, samples.row(j));
    acc.add(diff * diff);
  }
  return acc.value() / static_cast<double>(n);
}

std::vector<double> cdf_ls_bandwidth(const Matrix& samples, std::size_t budget,
                                     int threads) {
  const std::size_t d = samples.cols();
  if (budget < d)
    throw ValidationError("bandwidth search budget (" +
                          std::to_string(budget) +
                          ") must be at least the dimension (" +
                          std::to_string(d) + ")");
  if (threads < 1)
    throw ValidationError("thread count must be at least 1");

  std::vector<double> h = silverman_bandwidth(samples);
  std::vector<double> lo(d), hi(d);
  for (std::size_t k = 0; k < d; ++k) {
    lo[k] = h[k] / 20.0;
    hi[k] = h[k] * 20.0;
  }

  const std::size_t n = samples.rows();

  // The objective is quadratic in n, so chunks of points are farmed out to
  // workers.  The chunking is fixed and partials are combined in chunk
  // order, keeping the value bit-identical for every thread count.
  constexpr std::size_t kChunks = 64;
  const std::size_t n_workers = std::min(
      {static_cast<std::size_t>(threads), kChunks,
       std::max<std::size_t>(1, std::thread::hardware_concurrency())});
  auto chunked = [&](auto&& per_point) {
    std::array<double, kChunks> partial{};
    auto work = [&](std::size_t chunk_begin, std::size_t chunk_end) {
      for (std::size_t chunk = chunk_begin; chunk < chunk_end; ++chunk) {
        const std::size_t j0 = n * chunk / kChunks;
        const std::size_t j1 = n * (chunk + 1) / kChunks;
        KahanSum acc;
        for (std::size_t j = j0; j < j1; ++j) acc.add(per_point(j));
        partial[chunk] = acc.value();
      }
    };
    if (n_workers <= 1) {
      work(0, kChunks);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(n_workers - 1);
      for (std::size_t t = 1; t < n_workers; ++t)
        pool.emplace_back(work, kChunks * t / n_workers,
                          kChunks * (t + 1) / n_workers);
      work(0, kChunks / n_workers);
      for (auto& th : pool) th.join();
    }
    KahanSum total;
    for (double p : partial) total.add(p);
    return total.value();
  };

  // The empirical CDF at the sample points never changes; cache it so each
  // objective evaluation only pays for the smoothed side.
  std::vector<double> ecdf(n);
  chunked([&](std::size_t j) {
    ecdf[j] = empirical_cdf(samples, samples.row(j));
    return 0.0;
  });

  std::size_t evals = 0;
  auto objective = [&](const std::vector<double>& cand) {
    ++evals;
    const double sum = chunked([&](std::size_t j) {
      const double diff = kde_cdf_at(samples, cand, samples.row(j)) - ecdf[j];
      return diff * diff;
    });
    return sum / static_cast<double>(n);
  };

  double best = objective(h);
  constexpr double kSweepTol = 1e-10;
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;

  bool improving = true;
  while (improving && evals < budget) {
    const double sweep_start = best;
    for (std::size_t k = 0; k < d && evals < budget; ++k) {
      // Golden-section line search along dimension k, always keeping the
      // best bandwidth seen so the result can only improve on the start.
      double a = lo[k];
      double b = hi[k];
      const double width_tol = 1e-3 * (b - a);
      double t_best = h[k];
      double f_best = best;
      auto probe = [&](double t) {
        std::vector<double> cand = h;
        cand[k] = t;
        const double f = objective(cand);
        if (f < f_best) {
          f_best = f;
          t_best = t;
        }
        return f;
      };
      if (evals + 2 > budget) break;
      double c1 = b - invphi * (b - a);
      double c2 = a + invphi * (b - a);
      double f1 = probe(c1);
      double f2 = probe(c2);
      while (b - a > width_tol && evals < budget) {
        if (f1 <= f2) {
          b = c2;
          c2 = c1;
          f2 = f1;
          c1 = b - invphi * (b - a);
          f1 = probe(c1);
        } else {
          a = c1;
          c1 = c2;
          f1 = f2;
          c2 = a + invphi * (b - a);
          f2 = probe(c2);
        }
      }
      h[k] = t_best;
      best = f_best;
    }
    improving = sweep_start - best >= kSweepTol;
  }
  return h;
}

std::vector<double> select_bandwidth(const Matrix& samples,
                                     const BandwidthSpec& spec) {
  switch (spec.strategy) {
    case BandwidthSpec::Strategy::kSilverman:
      return silverman_bandwidth(samples);
    case BandwidthSpec::Strategy::kCdfLeastSquares:
      return cdf_ls_bandwidth(samples, spec.budget, spec.threads);
  }
  throw ValidationError("unknown bandwidth strategy");
}

}  // namespace eigensense
