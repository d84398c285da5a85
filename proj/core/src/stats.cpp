#include "lcft/util/stats.hpp"

#include <algorithm>
#include <cmath>

#include "lcft/errors.hpp"

namespace lcft {

double pairwise_sum(std::span<const double> x) {
  if (x.size() <= 16) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  }
  const std::size_t half = x.size() / 2;
  return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

MeanError mean_and_error(std::span<const double> x) {
  if (x.empty()) throw DomainError("mean_and_error: empty sample");
  const double n = static_cast<double>(x.size());
  const double mean = pairwise_sum(x) / n;
  if (x.size() < 2) return {mean, 0.0};
  std::vector<double> dev(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) dev[i] = (x[i] - mean) * (x[i] - mean);
  const double var = pairwise_sum(dev) / (n - 1.0);
  return {mean, std::sqrt(var / n)};
}

MedianOfMeans median_of_means(std::span<const double> x, int n_blocks) {
  if (n_blocks < 1 || x.size() < static_cast<std::size_t>(n_blocks)) {
    throw DomainError("median_of_means: need at least one sample per block");
  }
  std::vector<double> means;
  const std::size_t n = x.size();
  for (int b = 0; b < n_blocks; ++b) {
    const std::size_t lo = n * b / n_blocks, hi = n * (b + 1) / n_blocks;
    means.push_back(pairwise_sum(x.subspan(lo, hi - lo)) / static_cast<double>(hi - lo));
  }
  std::sort(means.begin(), means.end());
  auto quantile = [&](double q) {
    const double pos = q * (means.size() - 1);
    const std::size_t i = static_cast<std::size_t>(pos);
    const double f = pos - i;
    return i + 1 < means.size() ? means[i] * (1 - f) + means[i + 1] * f : means[i];
  };
  return {quantile(0.5), 0.5 * (quantile(0.75) - quantile(0.25)) / std::sqrt(double(n_blocks))};
}

McEstimate make_estimate(std::span<const double> samples, std::uint64_t seed, bool with_mom) {
  McEstimate e;
  const auto me = mean_and_error(samples);
  e.mean = me.mean;
  e.std_error = me.std_error;
  e.n_samples = static_cast<std::int64_t>(samples.size());
  e.seed = seed;
  if (with_mom && samples.size() >= 20) {
    const auto m = median_of_means(samples);
    e.has_median_of_means = true;
    e.median_of_means = m.value;
    e.median_of_means_band = m.band;
  }
  return e;
}

MeanError ratio_of_means(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) throw DomainError("ratio_of_means: paired samples required");
  const double n = static_cast<double>(a.size());
  const double ma = pairwise_sum(a) / n, mb = pairwise_sum(b) / n;
  const double r = ma / mb;
  // residuals of the linearized ratio
  std::vector<double> res(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = (a[i] - r * b[i]) / mb;
    res[i] = d * d;
  }
  return {r, std::sqrt(pairwise_sum(res) / (n - 1.0) / n)};
}

}  // namespace lcft
