#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lcft/correlators/three_point.hpp"

namespace lcft::correlators {

/// Sphere correlator with any number of insertions, estimated like
/// three_point_mc (same reduction, no exact comparison).
struct CorrelatorEstimate {
  ReducedCorrelator reduced;
  McEstimate expectation;  ///< E[Z^{-s}]
  McEstimate estimate;     ///< prefactor * gamma_factor * E[Z^{-s}]
};

struct CorrelatorBatch {
  std::vector<CorrelatorEstimate> results;
  Eigen::MatrixXd samples;  ///< n_samples x configurations: Z^{-s}
};

/// All configurations share the field samples.
CorrelatorBatch correlator_mc_many(std::span<const std::vector<VertexInsertion>> configurations,
                                   const LiouvilleParams& params, int l_max, const MonteCarloOptions& options);

/// epsilon C(alpha, epsilon, alpha) at (0, 1, infinity) for each epsilon, with
/// the overall constant calibrated on the same samples at the symmetric tuple
/// with s = 0.4. The calibrated MC/exact ratios are fitted by a polynomial in
/// epsilon (quadratic from three points) and read off at the Seiberg boundary
/// epsilon = 2(Q - alpha), where the cutoff bias vanishes. The exact side tends to 4 R(alpha) as epsilon -> 0;
/// choose epsilons just above the boundary.
struct TwoPointLimitResult {
  double alpha = 0.0;
  double reference_alpha = 0.0;
  std::vector<double> epsilons;
  std::vector<McEstimate> estimates;  ///< calibrated epsilon C_MC
  std::vector<double> exact;          ///< epsilon dozz(alpha, epsilon, alpha)
  std::vector<double> ratios;
  std::vector<double> ratio_errors;
  double target = 0.0;  ///< 4 R(alpha)
  double extrapolated_ratio = 0.0;
  double extrapolated_error = 0.0;
};

/// Requires alpha < Q and 2 alpha + epsilon > 2Q for every epsilon
/// (PreconditionError). Options select the cutoff, samples and seed.
TwoPointLimitResult two_point_limit_mc(double alpha, const LiouvilleParams& params, std::span<const double> epsilons,
                                       int l_max, const MonteCarloOptions& options);

/// conj(C(Q + ip, a1, a2)) C(Q + ip, a3, a4) |F_p(z)|^2 with the block
/// truncated at level n_max.
struct BootstrapNode {
  double p = 0.0;
  Complex integrand{};
  Complex c12{};
  Complex c34{};
  Complex block{};
  double block_truncation = 0.0;
  bool skipped = false;
  std::string reason;
};

BootstrapNode bootstrap_integrand(double p, Complex z, const std::array<double, 4>& alphas,
                                  const LiouvilleParams& params, int n_max);

struct BootstrapResult {
  std::vector<BootstrapNode> curve;
  Complex integral{};             ///< composite Simpson over [0, p_max]
  double peak = 0.0;              ///< max |integrand|
  double tail_ratio = 0.0;        ///< |integrand(p_max)| / peak
  double tail_estimate = 0.0;     ///< exponential extrapolation of the mass beyond p_max
  double truncation_estimate = 0.0;  ///< bound from the last block term, integrated
  std::vector<double> skipped;
};

/// Requires |z| < 1, a1 + a2 > Q, a3 + a4 > Q, p_max > 0, n_p >= 3, n_max <= 10.
/// Degenerate or singular nodes are skipped, reported and bridged linearly.
BootstrapResult four_point_bootstrap(Complex z, const std::array<double, 4>& alphas, const LiouvilleParams& params,
                                     double p_max, int n_p, int n_max, int threads = 0);

}  // namespace lcft::correlators
