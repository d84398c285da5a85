#include "lcft/gmc/ensemble.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>

#include "lcft/errors.hpp"
#include "lcft/util/parallel.hpp"

namespace lcft::gmc {

Point3 embed_position(GeometryKind kind, const SpherePoint& p) {
  switch (kind) {
    case GeometryKind::circle: {
      if (p.at_infinity() || p.z() == Complex(0.0)) {
        throw DomainError("embed_position: circle points need a nonzero finite coordinate");
      }
      double t = std::arg(p.z());
      if (t < 0.0) t += 2.0 * std::numbers::pi;
      return {t, 0.0, 0.0};
    }
    case GeometryKind::flat_torus: {
      if (p.at_infinity()) throw DomainError("embed_position: torus points must be finite");
      const double x = p.z().real() - std::floor(p.z().real());
      const double y = p.z().imag() - std::floor(p.z().imag());
      return {x, y, 0.0};
    }
    case GeometryKind::round_sphere: {
      const auto e = p.embed();
      return {e.x, e.y, e.z};
    }
  }
  throw DomainError("embed_position: unknown geometry");
}

FieldEnsemble::FieldEnsemble(const SurfaceGeometry& geometry, fields::SphereGridSpec spec)
    : geometry_(geometry) {
  switch (geometry.kind()) {
    case GeometryKind::circle:
      circle_ = std::make_unique<fields::CircleSampler>(geometry.resolution());
      grid_ = circle_->grid_ptr();
      sigma2_ = circle_->sigma2();
      batch_size_ = 64;
      break;
    case GeometryKind::flat_torus:
      torus_ = std::make_unique<fields::TorusSampler>(geometry.resolution());
      grid_ = torus_->grid_ptr();
      sigma2_ = torus_->sigma2();
      batch_size_ = 32;
      break;
    case GeometryKind::round_sphere:
      sphere_ = std::make_unique<fields::SphereSampler>(geometry.resolution(), spec);
      grid_ = sphere_->grid_ptr();
      sigma2_ = sphere_->sigma2();
      batch_size_ = 16;
      break;
  }
}

FieldEnsemble::~FieldEnsemble() = default;

Eigen::Map<const Eigen::VectorXd> FieldEnsemble::volumes() const {
  return {grid_->volumes.data(), static_cast<Eigen::Index>(grid_->volumes.size())};
}

void FieldEnsemble::sample_batch(std::uint64_t seed, std::uint64_t first, int count,
                                 Eigen::MatrixXd& out) const {
  if (sphere_) {
    sphere_->sample_batch(seed, first, count, out);
    return;
  }
  out.resize(static_cast<Eigen::Index>(grid_->size()), count);
  for (int k = 0; k < count; ++k) {
    const std::uint64_t index = first + static_cast<std::uint64_t>(k);
    if (circle_) {
      circle_->synthesize(fields::sample_circle(circle_->n_modes(), seed, index), out.col(k).data());
    } else {
      torus_->sample_into(seed, index, out.col(k).data());
    }
  }
}

Eigen::VectorXd FieldEnsemble::covariance_to_point(const Point3& p) const {
  const auto n_cells = static_cast<Eigen::Index>(grid_->size());
  Eigen::VectorXd out(n_cells);
  if (circle_) {
    const int n = circle_->n_modes();
    for (Eigen::Index i = 0; i < n_cells; ++i) {
      // cos(k d) by the Chebyshev recurrence
      const double d = grid_->centers[i][0] - p[0];
      const double c1 = std::cos(d);
      double prev = 1.0, cur = c1, s = 0.0;
      for (int k = 1; k <= n; ++k) {
        s += cur / k;
        const double next = 2.0 * c1 * cur - prev;
        prev = cur;
        cur = next;
      }
      out(i) = s;
    }
  } else if (torus_) {
    const int n = torus_->resolution();
    // separable sum: Re sum_k e^{2 pi i kx dx} w_k e^{2 pi i ky dy}
    Eigen::MatrixXcd ex(n, n), ey(n, n);
    Eigen::MatrixXd w(n, n);
    for (int a = 0; a < n; ++a) {
      const double xa = static_cast<double>(a) / n;
      for (int b = 0; b < n; ++b) {
        const int k = b - n / 2;
        ex(a, b) = std::polar(1.0, 2.0 * std::numbers::pi * k * (xa - p[0]));
        ey(a, b) = std::polar(1.0, 2.0 * std::numbers::pi * k * (xa - p[1]));
      }
    }
    for (int bx = 0; bx < n; ++bx) {
      for (int by = 0; by < n; ++by) {
        const int kx = bx - n / 2, ky = by - n / 2;
        w(bx, by) = (kx == 0 && ky == 0) ? 0.0
                                         : 1.0 / (2.0 * std::numbers::pi * (double(kx) * kx + double(ky) * ky));
      }
    }
    const Eigen::MatrixXcd m = ex * w.cast<std::complex<double>>() * ey.transpose();
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) out(static_cast<Eigen::Index>(a) * n + b) = m(a, b).real();
    }
  } else {
    std::vector<double> cosines(grid_->size());
    for (std::size_t i = 0; i < grid_->size(); ++i) {
      const auto& c = grid_->centers[i];
      cosines[i] = c[0] * p[0] + c[1] * p[1] + c[2] * p[2];
    }
    fields::sphere_covariance_many(sphere_->l_max(), cosines.data(), cosines.size(), out.data());
  }
  return out;
}

double FieldEnsemble::covariance(const Point3& a, const Point3& b) const {
  switch (geometry_.kind()) {
    case GeometryKind::circle:
      return fields::circle_covariance(geometry_.resolution(), a[0] - b[0]);
    case GeometryKind::flat_torus:
      return fields::torus_covariance(geometry_.resolution(), a[0] - b[0], a[1] - b[1]);
    case GeometryKind::round_sphere:
      return fields::sphere_covariance(geometry_.resolution(), a[0] * b[0] + a[1] * b[1] + a[2] * b[2]);
  }
  return 0.0;
}

Eigen::MatrixXd map_samples(const FieldEnsemble& ensemble, std::uint64_t seed, std::int64_t n_samples,
                            int n_outputs, int threads, const BatchKernel& kernel) {
  if (n_samples < 1) throw DomainError("map_samples: n_samples must be positive");
  if (n_outputs < 1) throw DomainError("map_samples: n_outputs must be positive");
  Eigen::MatrixXd result(n_samples, n_outputs);
  const std::int64_t bs = ensemble.batch_size();
  const std::int64_t n_batches = (n_samples + bs - 1) / bs;
  parallel_for(n_batches, resolve_threads(threads), [&](std::int64_t b) {
    const std::int64_t first = b * bs;
    const int count = static_cast<int>(std::min(bs, n_samples - first));
    Eigen::MatrixXd fields;
    ensemble.sample_batch(seed, static_cast<std::uint64_t>(first), count, fields);
    kernel(fields, static_cast<std::uint64_t>(first), result.middleRows(first, count));
  });
  return result;
}

void wick_masses(const Eigen::MatrixXd& fields, double gamma, double sigma2,
                 const Eigen::Ref<const Eigen::VectorXd>& volumes, Eigen::MatrixXd& masses) {
  const double shift = -0.5 * gamma * gamma * sigma2;
  masses = ((gamma * fields.array()) + shift).exp().matrix();
  masses.array().colwise() *= volumes.array();
}

}  // namespace lcft::gmc
