#include "lcft/core/params.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lcft/errors.hpp"

namespace lcft {

double background_charge(double gamma) { return 2.0 / gamma + gamma / 2.0; }

Complex conformal_weight(Complex alpha, double Q) { return 0.5 * alpha * (Q - 0.5 * alpha); }

LiouvilleParams::LiouvilleParams(double gamma, double mu) : gamma_(gamma), mu_(mu) {
  if (!(gamma > 0.0 && gamma < 2.0)) {
    throw DomainError("gamma must lie in (0, 2), got " + std::to_string(gamma));
  }
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw DomainError("mu must be positive, got " + std::to_string(mu));
  }
  Q_ = background_charge(gamma);
}

DerivedConstants derived_constants(const LiouvilleParams& params) {
  return {params.Q(), params.central_charge()};
}

SpherePoint::Embedding SpherePoint::embed() const {
  if (at_infinity_) return {0.0, 0.0, 1.0};
  const double r2 = std::norm(z_);
  const double d = 1.0 + r2;
  return {2.0 * z_.real() / d, 2.0 * z_.imag() / d, (r2 - 1.0) / d};
}

double chordal_distance(const SpherePoint& a, const SpherePoint& b) {
  if (a.at_infinity() && b.at_infinity()) return 0.0;
  if (a.at_infinity()) return 2.0 / std::sqrt(1.0 + std::norm(b.z()));
  if (b.at_infinity()) return 2.0 / std::sqrt(1.0 + std::norm(a.z()));
  return 2.0 * std::abs(a.z() - b.z()) /
         std::sqrt((1.0 + std::norm(a.z())) * (1.0 + std::norm(b.z())));
}

double round_metric_density(Complex z) {
  const double d = 1.0 + std::norm(z);
  return 4.0 / (d * d);
}

std::string_view to_string(GeometryKind kind) {
  switch (kind) {
    case GeometryKind::circle:
      return "circle";
    case GeometryKind::flat_torus:
      return "torus";
    case GeometryKind::round_sphere:
      return "sphere";
  }
  return "unknown";
}

GeometryKind geometry_kind_from_string(std::string_view name) {
  if (name == "circle") return GeometryKind::circle;
  if (name == "torus" || name == "flat-torus") return GeometryKind::flat_torus;
  if (name == "sphere" || name == "round-sphere") return GeometryKind::round_sphere;
  throw DomainError("unknown geometry '" + std::string(name) + "'");
}

SurfaceGeometry::SurfaceGeometry(GeometryKind kind, int resolution)
    : kind_(kind), resolution_(resolution) {
  if (resolution < 4) {
    throw DomainError("geometry resolution must be at least 4, got " + std::to_string(resolution));
  }
}

int SurfaceGeometry::euler_characteristic() const noexcept {
  switch (kind_) {
    case GeometryKind::round_sphere:
      return 2;
    case GeometryKind::flat_torus:
    case GeometryKind::circle:
      return 0;
  }
  return 0;
}

double SurfaceGeometry::volume() const noexcept {
  switch (kind_) {
    case GeometryKind::circle:
      return 2.0 * std::numbers::pi;
    case GeometryKind::flat_torus:
      return 1.0;
    case GeometryKind::round_sphere:
      return 4.0 * std::numbers::pi;
  }
  return 0.0;
}

std::string_view to_string(SeibergVerdict verdict) {
  switch (verdict) {
    case SeibergVerdict::ok:
      return "ok";
    case SeibergVerdict::violates_sum:
      return "violates_sum";
    case SeibergVerdict::violates_individual:
      return "violates_individual";
  }
  return "unknown";
}

SeibergVerdict seiberg_check(std::span<const VertexInsertion> insertions, int euler_char,
                             const LiouvilleParams& params) {
  if (insertions.empty()) throw DomainError("seiberg_check needs at least one insertion");
  const double Q = params.Q();
  double sum = 0.0;
  for (const auto& ins : insertions) sum += ins.alpha.real();
  if (!(sum > euler_char * Q)) return SeibergVerdict::violates_sum;
  for (const auto& ins : insertions) {
    if (!(ins.alpha.real() < Q)) return SeibergVerdict::violates_individual;
  }
  return SeibergVerdict::ok;
}

}  // namespace lcft
