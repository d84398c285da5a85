#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>

#include "lcft/core/params.hpp"
#include "lcft/fields/field.hpp"

namespace lcft::gmc {

using Point3 = std::array<double, 3>;

/// Grid coordinates of a marked point: (arg z, 0, 0) on the circle,
/// (Re z mod 1, Im z mod 1, 0) on the torus, the stereographic image on the
/// sphere.
Point3 embed_position(GeometryKind kind, const SpherePoint& p);

/// Sampler for one geometry at one cutoff, producing fields in fixed batches.
/// Batch b always holds sample indices [b * batch_size, (b + 1) * batch_size),
/// so results do not depend on how batches are distributed over threads.
class FieldEnsemble {
 public:
  explicit FieldEnsemble(const SurfaceGeometry& geometry, fields::SphereGridSpec spec = {});
  ~FieldEnsemble();
  FieldEnsemble(const FieldEnsemble&) = delete;
  FieldEnsemble& operator=(const FieldEnsemble&) = delete;

  const SurfaceGeometry& geometry() const noexcept { return geometry_; }
  const fields::Grid& grid() const noexcept { return *grid_; }
  std::shared_ptr<const fields::Grid> grid_ptr() const noexcept { return grid_; }
  /// Pointwise variance of the truncated field (constant on every grid).
  double sigma2() const noexcept { return sigma2_; }
  Eigen::Map<const Eigen::VectorXd> volumes() const;
  int batch_size() const noexcept { return batch_size_; }

  /// Fills out (cells x count) with samples first .. first + count - 1.
  void sample_batch(std::uint64_t seed, std::uint64_t first, int count, Eigen::MatrixXd& out) const;

  /// Truncated covariance between every grid node and the point p.
  Eigen::VectorXd covariance_to_point(const Point3& p) const;
  /// Truncated covariance between two points.
  double covariance(const Point3& a, const Point3& b) const;

 private:
  SurfaceGeometry geometry_;
  std::shared_ptr<const fields::Grid> grid_;
  double sigma2_ = 0.0;
  int batch_size_ = 1;
  std::unique_ptr<fields::CircleSampler> circle_;
  std::unique_ptr<fields::TorusSampler> torus_;
  std::unique_ptr<fields::SphereSampler> sphere_;
};

/// kernel(fields, first_index, out): fields holds the batch (cells x count),
/// out is the matching (count x n_outputs) block of the result.
using BatchKernel = std::function<void(const Eigen::MatrixXd& fields, std::uint64_t first,
                                       Eigen::Ref<Eigen::MatrixXd> out)>;

/// Evaluates per-sample observables for indices [0, n_samples); row i of the
/// result belongs to sample i.
Eigen::MatrixXd map_samples(const FieldEnsemble& ensemble, std::uint64_t seed, std::int64_t n_samples,
                            int n_outputs, int threads, const BatchKernel& kernel);

/// masses(i, k) = volume_i exp(gamma fields(i, k) - gamma^2 sigma2 / 2).
void wick_masses(const Eigen::MatrixXd& fields, double gamma, double sigma2,
                 const Eigen::Ref<const Eigen::VectorXd>& volumes, Eigen::MatrixXd& masses);

}  // namespace lcft::gmc
