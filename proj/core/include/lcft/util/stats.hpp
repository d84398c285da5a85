#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace lcft {

/// Contract for every Monte Carlo result.
struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
  double runtime_seconds = 0.0;
  /// Median-of-means companion, reported when heavy tails are possible.
  bool has_median_of_means = false;
  double median_of_means = 0.0;
  double median_of_means_band = 0.0;
};

/// Order-fixed pairwise summation.
double pairwise_sum(std::span<const double> x);

/// Sample mean and standard error of the mean (n-1 variance).
struct MeanError {
  double mean;
  double std_error;
};
MeanError mean_and_error(std::span<const double> x);

/// Median of block means over n_blocks contiguous blocks, with a band equal to
/// half the interquartile range of the block means divided by sqrt(n_blocks).
struct MedianOfMeans {
  double value;
  double band;
};
MedianOfMeans median_of_means(std::span<const double> x, int n_blocks = 20);

McEstimate make_estimate(std::span<const double> samples, std::uint64_t seed, bool with_median_of_means);

/// Ratio of means a/b with a delta-method standard error from paired samples.
MeanError ratio_of_means(std::span<const double> a, std::span<const double> b);

}  // namespace lcft
