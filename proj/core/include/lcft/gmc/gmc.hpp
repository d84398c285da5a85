#pragma once

#include <functional>
#include <span>
#include <vector>

#include "lcft/core/params.hpp"
#include "lcft/fields/field.hpp"
#include "lcft/gmc/ensemble.hpp"
#include "lcft/util/stats.hpp"

namespace lcft::gmc {

/// Discrete chaos measure: one atom per grid cell.
struct GmcAtoms {
  SurfaceGeometry geometry{GeometryKind::circle, 4};
  std::vector<Point3> cell_centers;
  std::vector<double> masses;
  double gamma = 0.0;
  int cutoff = 0;

  double total_mass() const;
};

/// Throws DomainError unless 0 < gamma < 2.
void check_gamma(double gamma);

/// mass(cell) = exp(gamma value - gamma^2 sigma2 / 2) * volume(cell).
GmcAtoms chaos_from_field(const fields::FieldSample& sample, double gamma);

/// Covariance between a cell center and a marked point, both in grid
/// coordinates (see embed_position).
using CovarianceOracle = std::function<double(const Point3& cell, const Point3& point)>;

/// The truncated covariance of the sampler for this geometry and cutoff.
CovarianceOracle truncated_covariance(const SurfaceGeometry& geometry);

/// Z = sum_cells mass(cell) exp(gamma sum_i alpha_i C(cell, z_i)). Requires
/// Re(alpha_i) < Q for every insertion (PreconditionError otherwise).
double vertex_weighted_mass(const GmcAtoms& atoms, std::span<const VertexInsertion> insertions,
                            const CovarianceOracle& covariance);

/// exp(gamma sum_i alpha_i C(cell, z_i)) on the ensemble grid, real weights only.
Eigen::VectorXd drift_factors(const FieldEnsemble& ensemble, std::span<const VertexInsertion> insertions,
                              double gamma);

/// Sphere only: cell averages of exp(gamma sum_i alpha_i G(x, z_i)) with the
/// exact Green function G = -log|x - z| + kappa instead of the truncated
/// covariance, so that the drifted mass has the continuum mean at every
/// cutoff. Each factor is averaged separately; the singular factor of an
/// insertion is integrated in closed form near its point. Requires
/// gamma alpha_i < 2 for every insertion (PreconditionError otherwise).
Eigen::VectorXd averaged_drift_factors(const FieldEnsemble& ensemble, std::span<const VertexInsertion> insertions,
                                       double gamma);

/// Largest admissible moment order above one: 2 d / gamma^2.
double moment_threshold(double gamma, const SurfaceGeometry& geometry);

/// Per-sample total masses for sample indices [0, n_samples).
std::vector<double> total_mass_samples(const FieldEnsemble& ensemble, double gamma, std::int64_t n_samples,
                                       std::uint64_t seed, int threads = 0);

/// Monte Carlo estimate of E[M^q]. For q > 1 the order must stay below
/// moment_threshold (PreconditionError otherwise); q <= 1 is always allowed.
/// Median-of-means is attached when gamma > 1.2.
McEstimate total_mass_moments(double gamma, const SurfaceGeometry& geometry, double q, std::int64_t n_samples,
                              std::uint64_t seed, int threads = 0);

/// Heavy-tail threshold above which estimates carry median-of-means.
inline constexpr double kHeavyTailGamma = 1.2;

}  // namespace lcft::gmc
