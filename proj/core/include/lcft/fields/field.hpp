#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lcft/core/params.hpp"

namespace lcft::fields {

/// Grid node positions and base-measure cell volumes. Centers are stored as
/// (theta, 0, 0) on the circle, (x, y, 0) on the torus and unit vectors on
/// the sphere.
struct Grid {
  GeometryKind kind = GeometryKind::circle;
  std::vector<std::array<double, 3>> centers;
  std::vector<double> volumes;
  std::size_t size() const noexcept { return volumes.size(); }
};

/// One realization of a truncated field on a discretized geometry.
struct FieldSample {
  SurfaceGeometry geometry{GeometryKind::circle, 4};
  std::vector<double> values;  ///< one entry per grid node
  int mode_cutoff = 0;
  std::vector<double> sigma2;  ///< pointwise variance of the truncated field
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
  std::shared_ptr<const Grid> grid;  ///< node positions and cell volumes
};

/// Returns the truncated-sum pointwise variance used for Wick normalization.
const std::vector<double>& regularized_variance(const FieldSample& sample);

// ---------------------------------------------------------------- circle

/// Modes of phi(theta) = c + sum_{n <= N} (x_n cos n theta - y_n sin n theta)/sqrt(n).
struct CircleModes {
  double zero_mode = 0.0;
  std::vector<double> cos_coeffs;  ///< x_n, n = 1..N
  std::vector<double> sin_coeffs;  ///< y_n, n = 1..N

  int n_modes() const noexcept { return static_cast<int>(cos_coeffs.size()); }
  /// Field value at theta, including the zero mode.
  double evaluate(double theta) const;
};

/// Optional window for the zero mode: when given, c is drawn uniformly from
/// [lo, hi] (Lebesgue measure restricted to the window, normalized).
struct ZeroModeWindow {
  double lo;
  double hi;
};

/// Draws the circle modes for sample `index`. The zero mode stays 0 unless a
/// window is supplied.
CircleModes sample_circle(int n_modes, std::uint64_t seed, std::uint64_t index = 0,
                          std::optional<ZeroModeWindow> window = std::nullopt);

/// Truncated variance H_N = sum_{n=1}^N 1/n.
double circle_variance(int n_modes);
/// Truncated covariance sum_{n=1}^N cos(n dtheta)/n.
double circle_covariance(int n_modes, double dtheta);

/// Evaluates circle modes on a uniform grid of `grid_size` points by FFT.
class CircleSampler {
 public:
  explicit CircleSampler(int n_modes, int grid_size = 0);  ///< grid_size 0 means 4 N
  ~CircleSampler();
  CircleSampler(const CircleSampler&) = delete;
  CircleSampler& operator=(const CircleSampler&) = delete;

  int n_modes() const noexcept { return n_modes_; }
  const Grid& grid() const noexcept { return *grid_; }
  std::shared_ptr<const Grid> grid_ptr() const noexcept { return grid_; }
  double sigma2() const noexcept { return sigma2_; }

  FieldSample sample(std::uint64_t seed, std::uint64_t index) const;
  /// Grid values of given modes (zero mode included).
  void synthesize(const CircleModes& modes, double* out) const;

 private:
  int n_modes_;
  int grid_size_;
  double sigma2_;
  std::shared_ptr<Grid> grid_;
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// ---------------------------------------------------------------- torus

/// Unit flat torus on an n x n grid; field sum_{k != 0} c_k e^{2 pi i k.x} over
/// the FFT box with E|c_k|^2 = 1/(2 pi |k|^2) (weights sqrt(2 pi)/sqrt(lambda_k)).
class TorusSampler {
 public:
  explicit TorusSampler(int n);  ///< n must be a power of two, n >= 4
  ~TorusSampler();
  TorusSampler(const TorusSampler&) = delete;
  TorusSampler& operator=(const TorusSampler&) = delete;

  int resolution() const noexcept { return n_; }
  const Grid& grid() const noexcept { return *grid_; }
  std::shared_ptr<const Grid> grid_ptr() const noexcept { return grid_; }
  double sigma2() const noexcept { return sigma2_; }

  FieldSample sample(std::uint64_t seed, std::uint64_t index) const;
  void sample_into(std::uint64_t seed, std::uint64_t index, double* out) const;

 private:
  int n_;
  double sigma2_;
  std::shared_ptr<Grid> grid_;
  std::vector<double> multiplier_;
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

FieldSample sample_torus(int resolution, std::uint64_t seed, std::uint64_t index = 0);
double torus_variance(int n);
/// Truncated covariance sum_{k in box, k != 0} cos(2 pi k.d)/(2 pi |k|^2).
double torus_covariance(int n, double dx, double dy);

// ---------------------------------------------------------------- sphere

/// Latitude-longitude grid: Gauss-Legendre nodes in cos(theta) (n_theta rings,
/// north first) times n_phi uniform longitudes; cell volume w_i 2 pi / n_phi.
struct SphereGridSpec {
  int n_theta = 0;  ///< even; 0 means 2 (l_max + 1) rounded up to even
  int n_phi = 0;    ///< > 2 l_max; 0 means 4 l_max
};

/// X = sqrt(2 pi) sum_{l=1}^{L} sum_m a_lm Y_lm / sqrt(l (l + 1)) with real
/// harmonics and i.i.d. standard normal a_lm.
class SphereSampler {
 public:
  explicit SphereSampler(int l_max, SphereGridSpec spec = {});
  ~SphereSampler();
  SphereSampler(const SphereSampler&) = delete;
  SphereSampler& operator=(const SphereSampler&) = delete;

  int l_max() const noexcept { return l_max_; }
  int n_theta() const noexcept { return n_theta_; }
  int n_phi() const noexcept { return n_phi_; }
  const Grid& grid() const noexcept { return *grid_; }
  std::shared_ptr<const Grid> grid_ptr() const noexcept { return grid_; }
  double sigma2() const noexcept { return sigma2_; }
  std::size_t n_coefficients() const noexcept;

  FieldSample sample(std::uint64_t seed, std::uint64_t index) const;
  /// Samples first_index .. first_index + count - 1 into the columns of out
  /// (grid size x count). Each column depends only on (seed, index).
  void sample_batch(std::uint64_t seed, std::uint64_t first_index, int count,
                    Eigen::MatrixXd& out) const;

 private:
  int l_max_;
  int n_theta_;
  int n_phi_;
  double sigma2_;
  std::shared_ptr<Grid> grid_;
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

FieldSample sample_sphere(int l_max, std::uint64_t seed, std::uint64_t index = 0);
/// The full covariance sum equals -log|x - y| + kSphereGreenConstant with
/// |x - y| the chordal distance on the unit sphere.
inline constexpr double kSphereGreenConstant = 0.69314718055994530942 - 0.5;

/// sum_{l=1}^{L} (2l + 1)/(2 l (l + 1)).
double sphere_variance(int l_max);
/// sum_{l=1}^{L} (2l + 1)/(2 l (l + 1)) P_l(cos_angle).
double sphere_covariance(int l_max, double cos_angle);
/// Fills out[k] = sphere_covariance(l_max, x[k]) with a Legendre recurrence.
void sphere_covariance_many(int l_max, const double* cos_angles, std::size_t n, double* out);

// ---------------------------------------------------------------- I/O

/// Binary dump: magic "LCFTSMP1", then little-endian header
/// (u32 geometry kind, u32 resolution, u32 cutoff, u64 seed, u64 index,
/// u64 count) and `count` float64 values.
void write_sample(std::ostream& os, const FieldSample& sample);
FieldSample read_sample(std::istream& is);

}  // namespace lcft::fields
