#pragma once

#include <complex>
#include <span>
#include <string_view>

namespace lcft {

using Complex = std::complex<double>;

/// Background charge Q = 2/gamma + gamma/2.
double background_charge(double gamma);

/// Conformal weight Delta_alpha = (alpha/2)(Q - alpha/2).
Complex conformal_weight(Complex alpha, double Q);

/// Coupling constant and cosmological constant of the theory. Immutable once
/// constructed; the constructor enforces 0 < gamma < 2 and mu > 0.
class LiouvilleParams {
 public:
  LiouvilleParams(double gamma, double mu);

  double gamma() const noexcept { return gamma_; }
  double mu() const noexcept { return mu_; }
  double Q() const noexcept { return Q_; }
  double central_charge() const noexcept { return 1.0 + 6.0 * Q_ * Q_; }

  Complex delta(Complex alpha) const { return conformal_weight(alpha, Q_); }

 private:
  double gamma_;
  double mu_;
  double Q_;
};

struct DerivedConstants {
  double Q;
  double central_charge;
};

DerivedConstants derived_constants(const LiouvilleParams& params);

/// A point of the Riemann sphere in the plane chart. The point at infinity is
/// an explicit flag, never a large coordinate.
class SpherePoint {
 public:
  constexpr SpherePoint() = default;
  constexpr SpherePoint(Complex z) : z_(z) {}  // NOLINT(google-explicit-constructor)
  static constexpr SpherePoint infinity() {
    SpherePoint p;
    p.at_infinity_ = true;
    return p;
  }

  constexpr bool at_infinity() const noexcept { return at_infinity_; }
  /// Plane coordinate; meaningless when at_infinity().
  constexpr Complex z() const noexcept { return z_; }

  /// Image on the unit sphere under inverse stereographic projection:
  /// 0 maps to the south pole (0,0,-1), infinity to the north pole.
  struct Embedding {
    double x, y, z;
  };
  Embedding embed() const;

  friend bool operator==(const SpherePoint& a, const SpherePoint& b) {
    if (a.at_infinity_ || b.at_infinity_) return a.at_infinity_ == b.at_infinity_;
    return a.z_ == b.z_;
  }

 private:
  Complex z_{};
  bool at_infinity_ = false;
};

/// Chordal distance on the round sphere of radius one,
/// 2|z-w| / sqrt((1+|z|^2)(1+|w|^2)), with the limit at infinity.
double chordal_distance(const SpherePoint& a, const SpherePoint& b);

/// Round metric density g(z) = 4/(1+|z|^2)^2 in the plane chart.
double round_metric_density(Complex z);

/// Marked point with a vertex weight. Weights are complex throughout; bounds
/// that only make sense for real weights use the real part.
struct VertexInsertion {
  Complex alpha;
  SpherePoint position;

  Complex delta(double Q) const { return conformal_weight(alpha, Q); }
};

enum class GeometryKind { circle, flat_torus, round_sphere };

std::string_view to_string(GeometryKind kind);
GeometryKind geometry_kind_from_string(std::string_view name);

/// Model geometry plus its resolution (modes for the circle and the sphere,
/// grid cells per side for the torus).
class SurfaceGeometry {
 public:
  SurfaceGeometry(GeometryKind kind, int resolution);

  GeometryKind kind() const noexcept { return kind_; }
  int resolution() const noexcept { return resolution_; }

  /// Real dimension of the underlying manifold.
  int dimension() const noexcept { return kind_ == GeometryKind::circle ? 1 : 2; }
  int euler_characteristic() const noexcept;
  /// Total base volume: 2*pi (circle), 1 (unit flat torus), 4*pi (sphere).
  double volume() const noexcept;

  friend bool operator==(const SurfaceGeometry&, const SurfaceGeometry&) = default;

 private:
  GeometryKind kind_;
  int resolution_;
};

enum class SeibergVerdict { ok, violates_sum, violates_individual };

std::string_view to_string(SeibergVerdict verdict);

/// Checks sum Re(alpha_j) > chi * Q (reported first) and Re(alpha_j) < Q for
/// all j. Throws DomainError on an empty list.
SeibergVerdict seiberg_check(std::span<const VertexInsertion> insertions, int euler_char,
                             const LiouvilleParams& params);

}  // namespace lcft
