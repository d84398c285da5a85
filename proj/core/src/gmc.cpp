#include "lcft/gmc/gmc.hpp"

#include <gsl/gsl_integration.h>

#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lcft/errors.hpp"

namespace lcft::gmc {

double GmcAtoms::total_mass() const { return pairwise_sum(masses); }

void check_gamma(double gamma) {
  if (!(gamma > 0.0 && gamma < 2.0)) throw DomainError("gamma must lie in (0, 2)");
}

GmcAtoms chaos_from_field(const fields::FieldSample& sample, double gamma) {
  check_gamma(gamma);
  if (!sample.grid || sample.grid->size() != sample.values.size()) {
    throw DomainError("chaos_from_field: sample has no matching grid");
  }
  GmcAtoms atoms;
  atoms.geometry = sample.geometry;
  atoms.cell_centers = sample.grid->centers;
  atoms.gamma = gamma;
  atoms.cutoff = sample.mode_cutoff;
  atoms.masses.resize(sample.values.size());
  for (std::size_t i = 0; i < sample.values.size(); ++i) {
    atoms.masses[i] = std::exp(gamma * sample.values[i] - 0.5 * gamma * gamma * sample.sigma2[i]) *
                      sample.grid->volumes[i];
  }
  return atoms;
}

CovarianceOracle truncated_covariance(const SurfaceGeometry& geometry) {
  const int r = geometry.resolution();
  switch (geometry.kind()) {
    case GeometryKind::circle:
      return [r](const Point3& a, const Point3& b) { return fields::circle_covariance(r, a[0] - b[0]); };
    case GeometryKind::flat_torus:
      return [r](const Point3& a, const Point3& b) { return fields::torus_covariance(r, a[0] - b[0], a[1] - b[1]); };
    case GeometryKind::round_sphere:
      return [r](const Point3& a, const Point3& b) {
        return fields::sphere_covariance(r, a[0] * b[0] + a[1] * b[1] + a[2] * b[2]);
      };
  }
  throw DomainError("truncated_covariance: unknown geometry");
}

namespace {

void check_insertions(std::span<const VertexInsertion> insertions, double gamma) {
  const double Q = background_charge(gamma);
  for (const auto& v : insertions) {
    if (!(v.alpha.real() < Q)) {
      std::ostringstream os;
      os << "vertex insertion alpha = " << v.alpha.real() << " violates alpha < Q = " << Q;
      throw PreconditionError(os.str());
    }
  }
}

}  // namespace

double vertex_weighted_mass(const GmcAtoms& atoms, std::span<const VertexInsertion> insertions,
                            const CovarianceOracle& covariance) {
  check_insertions(insertions, atoms.gamma);
  std::vector<Point3> points;
  for (const auto& v : insertions) {
    if (v.alpha.imag() != 0.0) throw DomainError("vertex_weighted_mass: weights must be real");
    points.push_back(embed_position(atoms.geometry.kind(), v.position));
  }
  std::vector<double> terms(atoms.masses.size());
  for (std::size_t c = 0; c < atoms.masses.size(); ++c) {
    double drift = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      drift += insertions[i].alpha.real() * covariance(atoms.cell_centers[c], points[i]);
    }
    terms[c] = atoms.masses[c] * std::exp(atoms.gamma * drift);
  }
  return pairwise_sum(terms);
}

Eigen::VectorXd drift_factors(const FieldEnsemble& ensemble, std::span<const VertexInsertion> insertions,
                              double gamma) {
  check_gamma(gamma);
  check_insertions(insertions, gamma);
  Eigen::VectorXd drift = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ensemble.grid().size()));
  for (const auto& v : insertions) {
    if (v.alpha.imag() != 0.0) throw DomainError("drift_factors: weights must be real");
    drift += v.alpha.real() * ensemble.covariance_to_point(embed_position(ensemble.geometry().kind(), v.position));
  }
  return (gamma * drift.array()).exp().matrix();
}

namespace {

// int_0^a int_0^b (x^2 + y^2)^(-beta/2) dy dx for a, b >= 0, split along the
// diagonal into two triangles with the radial integral done exactly.
double corner_integral(double a, double b, double beta) {
  if (a <= 0.0 || b <= 0.0) return 0.0;
  static const gsl_integration_glfixed_table* table = gsl_integration_glfixed_table_alloc(32);
  const double e = 2.0 - beta;
  const double t0 = std::atan2(b, a);
  double lower = 0.0, upper = 0.0;
  for (std::size_t k = 0; k < table->n; ++k) {
    double node = 0.0, weight = 0.0;
    gsl_integration_glfixed_point(0.0, t0, k, &node, &weight, table);
    lower += weight * std::pow(a / std::cos(node), e);
    gsl_integration_glfixed_point(t0, 0.5 * std::numbers::pi, k, &node, &weight, table);
    upper += weight * std::pow(b / std::sin(node), e);
  }
  return (lower + upper) / e;
}

double signed_corner(double x, double y, double beta) {
  const double sign = (x < 0.0) != (y < 0.0) ? -1.0 : 1.0;
  return sign * corner_integral(std::abs(x), std::abs(y), beta);
}

// Average of |w|^(-beta) over the rectangle [u0, u1] x [v0, v1] of the plane.
double rectangle_average(double u0, double u1, double v0, double v1, double beta) {
  const double total = signed_corner(u1, v1, beta) - signed_corner(u0, v1, beta) - signed_corner(u1, v0, beta) +
                       signed_corner(u0, v0, beta);
  return total / ((u1 - u0) * (v1 - v0));
}

}  // namespace

Eigen::VectorXd averaged_drift_factors(const FieldEnsemble& ensemble, std::span<const VertexInsertion> insertions,
                                       double gamma) {
  check_gamma(gamma);
  check_insertions(insertions, gamma);
  if (ensemble.geometry().kind() != GeometryKind::round_sphere) {
    throw DomainError("averaged_drift_factors: requires the round sphere");
  }
  const fields::Grid& grid = ensemble.grid();
  const std::size_t n = grid.size();
  std::size_t n_phi = 1;
  while (n_phi < n && grid.centers[n_phi][2] == grid.centers[0][2]) ++n_phi;
  const std::size_t n_theta = n / n_phi;
  const double dphi = 2.0 * std::numbers::pi / double(n_phi);

  // Ring edges in x = cos(theta), north first; each ring has area w_i * 2 pi.
  std::vector<double> edge(n_theta + 1);
  edge[0] = 1.0;
  for (std::size_t i = 0; i < n_theta; ++i) edge[i + 1] = edge[i] - grid.volumes[i * n_phi] / dphi;
  for (std::size_t i = 0; i <= n_theta / 2; ++i) edge[n_theta - i] = -edge[i];

  static const gsl_integration_glfixed_table* fine = gsl_integration_glfixed_table_alloc(8);
  static const double gl_node[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
  static const double gl_weight[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

  Eigen::VectorXd log_drift = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  for (const auto& v : insertions) {
    if (v.alpha.imag() != 0.0) throw DomainError("averaged_drift_factors: weights must be real");
    const double beta = gamma * v.alpha.real();
    if (beta == 0.0) continue;
    if (!(beta < 2.0)) {
      throw PreconditionError("averaged_drift_factors: requires gamma alpha < 2 (integrable singularity)");
    }
    const double shift = beta * fields::kSphereGreenConstant;
    const Point3 z = embed_position(GeometryKind::round_sphere, v.position);
    if (std::abs(z[2]) > 1.0 - 1e-14) {
      // Pole: |x - z|^2 = 2 (1 -+ x) depends on the ring only.
      const double s = z[2] > 0.0 ? 1.0 : -1.0;
      const double h = 1.0 - 0.5 * beta;
      for (std::size_t i = 0; i < n_theta; ++i) {
        const double a = 1.0 - s * edge[i], b = 1.0 - s * edge[i + 1];
        const double lo = std::min(a, b), hi = std::max(a, b);
        const double avg = std::pow(2.0, -0.5 * beta) * (std::pow(hi, h) - std::pow(lo, h)) / h / (hi - lo);
        log_drift.segment(static_cast<Eigen::Index>(i * n_phi), static_cast<Eigen::Index>(n_phi)).array() +=
            std::log(avg) + shift;
      }
      continue;
    }
    const double rho = std::sqrt(1.0 - z[2] * z[2]);
    const double phz = std::atan2(z[1], z[0]);
    for (std::size_t i = 0; i < n_theta; ++i) {
      const double x0 = edge[i + 1], x1 = edge[i];
      for (std::size_t j = 0; j < n_phi; ++j) {
        const std::size_t cell = i * n_phi + j;
        const double phi = dphi * double(j);
        const Point3& c = grid.centers[cell];
        const double dist = std::hypot(c[0] - z[0], c[1] - z[1], c[2] - z[2]);
        const double u0 = (x0 - z[2]) / rho, u1 = (x1 - z[2]) / rho;
        const double d = std::remainder(phi - phz, 2.0 * std::numbers::pi);
        const double v0 = rho * (d - 0.5 * dphi), v1 = rho * (d + 0.5 * dphi);
        double avg = 0.0;
        if (dist < 4.0 * std::max(u1 - u0, v1 - v0)) {
          // Area-preserving chart around z: the planar singularity in closed
          // form plus a quadrature of the much milder remainder.
          avg = rectangle_average(u0, u1, v0, v1, beta);
          for (std::size_t a = 0; a < fine->n; ++a) {
            double x = 0.0, wx = 0.0;
            gsl_integration_glfixed_point(x0, x1, a, &x, &wx, fine);
            const double r = std::sqrt(std::max(0.0, 1.0 - x * x));
            for (std::size_t b = 0; b < fine->n; ++b) {
              double f = 0.0, wf = 0.0;
              gsl_integration_glfixed_point(phi - 0.5 * dphi, phi + 0.5 * dphi, b, &f, &wf, fine);
              const double q = std::hypot(r * std::cos(f) - z[0], r * std::sin(f) - z[1], x - z[2]);
              const double flat = std::hypot((x - z[2]) / rho, rho * std::remainder(f - phz, 2.0 * std::numbers::pi));
              avg += wx * wf * (std::pow(q, -beta) - std::pow(flat, -beta)) / ((x1 - x0) * dphi);
            }
          }
        } else {
          for (int a = 0; a < 3; ++a) {
            const double x = 0.5 * (x0 + x1) + 0.5 * (x1 - x0) * gl_node[a];
            const double r = std::sqrt(std::max(0.0, 1.0 - x * x));
            for (int b = 0; b < 3; ++b) {
              const double f = phi + 0.5 * dphi * gl_node[b];
              const double q = std::hypot(r * std::cos(f) - z[0], r * std::sin(f) - z[1], x - z[2]);
              avg += gl_weight[a] * gl_weight[b] * std::pow(q, -beta);
            }
          }
        }
        log_drift(static_cast<Eigen::Index>(cell)) += std::log(avg) + shift;
      }
    }
  }
  return log_drift.array().exp().matrix();
}

double moment_threshold(double gamma, const SurfaceGeometry& geometry) {
  return 2.0 * geometry.dimension() / (gamma * gamma);
}

std::vector<double> total_mass_samples(const FieldEnsemble& ensemble, double gamma, std::int64_t n_samples,
                                       std::uint64_t seed, int threads) {
  check_gamma(gamma);
  const Eigen::VectorXd vol = ensemble.volumes();
  const double sigma2 = ensemble.sigma2();
  const Eigen::MatrixXd m = map_samples(
      ensemble, seed, n_samples, 1, threads,
      [&](const Eigen::MatrixXd& f, std::uint64_t, Eigen::Ref<Eigen::MatrixXd> out) {
        Eigen::MatrixXd masses;
        wick_masses(f, gamma, sigma2, vol, masses);
        for (Eigen::Index k = 0; k < masses.cols(); ++k) {
          out(k, 0) = pairwise_sum(std::span<const double>(masses.col(k).data(), masses.rows()));
        }
      });
  return {m.data(), m.data() + m.size()};
}

McEstimate total_mass_moments(double gamma, const SurfaceGeometry& geometry, double q, std::int64_t n_samples,
                              std::uint64_t seed, int threads) {
  check_gamma(gamma);
  if (!std::isfinite(q)) throw DomainError("total_mass_moments: q must be finite");
  const double limit = moment_threshold(gamma, geometry);
  if (q > 1.0 && q >= limit) {
    std::ostringstream os;
    os << "total_mass_moments: moment of order " << q << " diverges for gamma = " << gamma << " on the "
       << to_string(geometry.kind()) << " (requires q < " << limit << ")";
    throw PreconditionError(os.str());
  }
  const auto start = std::chrono::steady_clock::now();
  FieldEnsemble ensemble(geometry);
  std::vector<double> x = total_mass_samples(ensemble, gamma, n_samples, seed, threads);
  for (double& v : x) v = q == 1.0 ? v : std::pow(v, q);
  McEstimate e = make_estimate(x, seed, gamma > kHeavyTailGamma);
  e.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return e;
}

}  // namespace lcft::gmc
