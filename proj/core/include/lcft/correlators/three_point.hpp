#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "lcft/core/params.hpp"
#include "lcft/fields/field.hpp"
#include "lcft/util/stats.hpp"

namespace lcft::correlators {

/// Additive constant of the zero-mean Green function of the unit round sphere
/// in the normalization of the sampled field: G(x, y) = -log|x - y| + kappa,
/// |x - y| the chordal distance.
using fields::kSphereGreenConstant;

/// int exp(sigma c - a e^{gamma c}) dc = Gamma(sigma/gamma) a^{-sigma/gamma} / gamma
/// for sigma > 0, a > 0.
double zero_mode_integral(double sigma, double gamma, double a);

/// Sphere correlator after the zero-mode integral and the Girsanov shift:
///   <prod V_alpha_i(z_i)> = prefactor * gamma_factor * E[Z^{-s}] (up to the
///   alpha-independent normalization of the path integral), with
///   s = (sum alpha_i - 2Q)/gamma,
///   gamma_factor = Gamma(s) mu^{-s} / gamma,
///   prefactor = exp(kappa (sum alpha_i)^2 / 2 - sum_{i<j} alpha_i alpha_j log|z_i - z_j|
///                   - s gamma^2 kappa / 2),
/// and Z the drifted chaos mass of vertex_weighted_mass.
struct ReducedCorrelator {
  double s_exponent = 0.0;
  double gamma_factor = 0.0;
  double log_gamma_factor = 0.0;
  double prefactor = 0.0;
  double log_prefactor = 0.0;
  std::vector<VertexInsertion> insertions;
};

/// Requires real weights at distinct points satisfying the sphere Seiberg
/// bounds (PreconditionError names the violated bound). Throws PoleError when
/// s is within 1e-12 of zero.
ReducedCorrelator reduce_zero_mode(std::span<const VertexInsertion> insertions, const LiouvilleParams& params);

using Triple = std::array<VertexInsertion, 3>;

struct ThreePointResult {
  Triple insertions;
  ReducedCorrelator reduced;
  McEstimate expectation;  ///< E[Z^{-s}]
  McEstimate estimate;     ///< prefactor * gamma_factor * E[Z^{-s}]
  double exact = 0.0;      ///< three_point_exact
  double ratio = 0.0;      ///< estimate / exact
  double ratio_error = 0.0;
};

/// How the Girsanov drift exp(gamma sum alpha_i G(x, z_i)) enters the cell masses.
/// The averaged kernel removes the mean bias of the truncated one near the
/// insertions and converges much faster when every gamma alpha_i is well
/// below 2; close to 2 the single lognormal per cell undersamples the
/// insertion cell and the truncated kernel is closer.
enum class DriftKernel {
  truncated,  ///< truncated covariance at the cell center
  averaged,   ///< exact Green function averaged over each cell (gamma alpha_i < 2)
};

struct MonteCarloOptions {
  std::int64_t n_samples = 10000;
  std::uint64_t seed = 0;
  int threads = 0;
  fields::SphereGridSpec grid{};
  DriftKernel drift = DriftKernel::truncated;
};

/// Several triples estimated on the same field samples (common random
/// numbers), so ratios between them have small paired errors.
struct ThreePointBatch {
  std::vector<ThreePointResult> results;
  Eigen::MatrixXd weighted;  ///< n_samples x triples: prefactor * gamma_factor * Z^{-s} / exact
  int l_max = 0;

  /// (MC/exact)_i / (MC/exact)_reference with a delta-method error.
  MeanError calibrated_ratio(int i, int reference) const;
};

ThreePointBatch three_point_mc_many(std::span<const Triple> triples, const LiouvilleParams& params, int l_max,
                                    const MonteCarloOptions& options);

ThreePointResult three_point_mc(const Triple& insertions, const LiouvilleParams& params,
                                const SurfaceGeometry& geometry, std::int64_t n_samples, std::uint64_t seed,
                                int threads = 0);

}  // namespace lcft::correlators
