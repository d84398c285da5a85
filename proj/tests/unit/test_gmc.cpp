#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "lcft/errors.hpp"
#include "lcft/gmc/gmc.hpp"
#include "oracles/gaussian_oracles.hpp"

using namespace lcft;
using namespace lcft::gmc;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Double integral of exp(g^2 K_N(t - t')) dt dt' as 2 pi times one periodic
// integral.
double circle_second_moment_oracle(int n, double gamma) {
  auto f = [&](double u) {
    double k = 0.0;
    for (int m = 1; m <= n; ++m) k += std::cos(m * u) / m;
    return std::exp(gamma * gamma * k);
  };
  double total = 0.0;
  const int panels = 32;
  for (int p = 0; p < panels; ++p) {
    total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, kTwoPi * p / panels,
                                                                           kTwoPi * (p + 1) / panels, 8, 1e-13);
  }
  return kTwoPi * total;
}

}  // namespace

TEST(Chaos, WickFormPerCell) {
  const fields::FieldSample s = fields::CircleSampler(16).sample(4, 2);
  const GmcAtoms a = chaos_from_field(s, 0.7);
  ASSERT_EQ(a.masses.size(), s.values.size());
  for (std::size_t i = 0; i < a.masses.size(); ++i) {
    EXPECT_NEAR(a.masses[i], std::exp(0.7 * s.values[i] - 0.245 * s.sigma2[i]) * s.grid->volumes[i],
                1e-15 * a.masses[i]);
    EXPECT_GT(a.masses[i], 0.0);
  }
  EXPECT_THROW(chaos_from_field(s, 0.0), DomainError);
  EXPECT_THROW(chaos_from_field(s, 2.0), DomainError);
}

TEST(Chaos, SmallGammaGivesVolumes) {
  const fields::FieldSample s = fields::sample_sphere(16, 1);
  const GmcAtoms a = chaos_from_field(s, 1e-9);
  for (std::size_t i = 0; i < a.masses.size(); ++i) EXPECT_NEAR(a.masses[i] / s.grid->volumes[i], 1.0, 1e-7);
}

TEST(Chaos, CellMeanIsVolume) {
  fields::CircleSampler sampler(32);
  std::vector<double> x;
  for (int i = 0; i < 20000; ++i) x.push_back(chaos_from_field(sampler.sample(3, i), 0.9).masses[5]);
  const auto me = mean_and_error(x);
  EXPECT_LT(std::abs(me.mean - sampler.grid().volumes[5]), 3.0 * me.std_error);
}

TEST(Moments, MeanMassIsBaseVolume) {
  for (const SurfaceGeometry& geo : {SurfaceGeometry(GeometryKind::circle, 32),
                                     SurfaceGeometry(GeometryKind::flat_torus, 16),
                                     SurfaceGeometry(GeometryKind::round_sphere, 16)}) {
    const McEstimate e = total_mass_moments(0.8, geo, 1.0, 10000, 2, 1);
    EXPECT_LT(std::abs(e.mean - geo.volume()), 3.0 * e.std_error) << to_string(geo.kind());
  }
}

TEST(Moments, CutoffMartingale) {
  for (int n : {16, 64, 256}) {
    const McEstimate e = total_mass_moments(0.6, SurfaceGeometry(GeometryKind::circle, n), 1.0, 10000, 5, 1);
    EXPECT_LT(std::abs(e.mean - kTwoPi), 3.0 * e.std_error) << n;
  }
}

TEST(Moments, SecondMomentMatchesDoubleQuadrature) {
  const int n = 32;
  const double oracle = circle_second_moment_oracle(n, 0.8);
  const McEstimate e = total_mass_moments(0.8, SurfaceGeometry(GeometryKind::circle, n), 2.0, 40000, 9, 1);
  EXPECT_LT(std::abs(e.mean - oracle), 3.0 * e.std_error) << e.mean << " vs " << oracle;
}

TEST(Moments, VarianceIncreasesWithGamma) {
  FieldEnsemble ens(SurfaceGeometry(GeometryKind::circle, 64));
  double last = 0.0;
  for (double g = 0.3; g <= 0.9 + 1e-9; g += 0.2) {
    const auto m = total_mass_samples(ens, g, 8000, 3, 1);
    const auto me = mean_and_error(m);
    const double var = me.std_error * me.std_error * m.size();
    EXPECT_GT(var, last);
    last = var;
  }
}

TEST(Moments, ThresholdsAreEnforced) {
  const SurfaceGeometry circle(GeometryKind::circle, 16), sphere(GeometryKind::round_sphere, 8);
  EXPECT_THROW(total_mass_moments(1.0, circle, 2.0, 10, 1), PreconditionError);
  EXPECT_THROW(total_mass_moments(1.5, sphere, 2.0, 10, 1), PreconditionError);
  EXPECT_NO_THROW(total_mass_moments(0.99, circle, 2.0, 10, 1));
  EXPECT_NO_THROW(total_mass_moments(1.4, sphere, 2.0, 10, 1));
  EXPECT_NO_THROW(total_mass_moments(1.9, sphere, -3.0, 10, 1));
  EXPECT_DOUBLE_EQ(moment_threshold(1.0, sphere), 4.0);
}

TEST(Moments, HeavyTailAddsMedianOfMeans) {
  const SurfaceGeometry torus(GeometryKind::flat_torus, 8);
  EXPECT_FALSE(total_mass_moments(1.0, torus, 1.0, 100, 1).has_median_of_means);
  EXPECT_TRUE(total_mass_moments(1.3, torus, 1.0, 100, 1).has_median_of_means);
}

TEST(Moments, NegativeMomentStableAcrossSphereCutoffs) {
  std::vector<McEstimate> e;
  for (int l : {64, 128, 256}) {
    e.push_back(total_mass_moments(1.0, SurfaceGeometry(GeometryKind::round_sphere, l), -0.4, 1500, 12, 1));
    EXPECT_GT(e.back().mean, 0.0);
  }
  for (std::size_t i = 1; i < e.size(); ++i) {
    EXPECT_LT(std::abs(e[i].mean - e[0].mean), 2.0 * (e[i].std_error + e[0].std_error));
  }
}

TEST(Moments, Deterministic) {
  const SurfaceGeometry geo(GeometryKind::round_sphere, 12);
  const McEstimate a = total_mass_moments(1.0, geo, 1.0, 100, 4, 1);
  const McEstimate b = total_mass_moments(1.0, geo, 1.0, 100, 4, 3);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.std_error, b.std_error);
}

TEST(Vertex, NoInsertionsGivesTotalMass) {
  const GmcAtoms a = chaos_from_field(fields::CircleSampler(32).sample(1, 1), 0.8);
  const auto cov = truncated_covariance(a.geometry);
  EXPECT_NEAR(vertex_weighted_mass(a, {}, cov), a.total_mass(), 1e-13 * a.total_mass());
  const VertexInsertion tiny{1e-10, SpherePoint(Complex(0.0, 1.0))};
  EXPECT_NEAR(vertex_weighted_mass(a, std::span(&tiny, 1), cov), a.total_mass(), 1e-8 * a.total_mass());
}

TEST(Vertex, BoundViolation) {
  const GmcAtoms a = chaos_from_field(fields::CircleSampler(8).sample(1, 1), 1.0);
  const VertexInsertion v{2.5, SpherePoint(Complex(1.0))};
  EXPECT_THROW(vertex_weighted_mass(a, std::span(&v, 1), truncated_covariance(a.geometry)), PreconditionError);
}

TEST(Vertex, CircleDriftedMeanMatchesClosedForm) {
  const int n = 64;
  const double g = 0.8, alpha = 0.5, theta0 = 1.0;
  const VertexInsertion v{alpha, SpherePoint(std::polar(1.0, theta0))};
  auto f = [&](double t) {
    double k = 0.0;
    for (int m = 1; m <= n; ++m) k += std::cos(m * (t - theta0)) / m;
    return std::exp(g * alpha * k);
  };
  double oracle = 0.0;
  for (int p = 0; p < 16; ++p) {
    oracle += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, kTwoPi * p / 16,
                                                                            kTwoPi * (p + 1) / 16, 8, 1e-13);
  }
  fields::CircleSampler sampler(n);
  const auto cov = truncated_covariance(SurfaceGeometry(GeometryKind::circle, n));
  std::vector<double> z;
  for (int i = 0; i < 10000; ++i) {
    z.push_back(vertex_weighted_mass(chaos_from_field(sampler.sample(8, i), g), std::span(&v, 1), cov));
  }
  const auto me = mean_and_error(z);
  EXPECT_LT(std::abs(me.mean - oracle), 3.0 * me.std_error);
}

TEST(Vertex, DriftFactorsMatchOracle) {
  for (const SurfaceGeometry& geo : {SurfaceGeometry(GeometryKind::circle, 16),
                                     SurfaceGeometry(GeometryKind::flat_torus, 8),
                                     SurfaceGeometry(GeometryKind::round_sphere, 8)}) {
    FieldEnsemble ens(geo);
    const VertexInsertion v[2] = {{0.7, SpherePoint(Complex(0.3, 0.4))}, {0.4, SpherePoint(Complex(-0.2, 0.9))}};
    const Eigen::VectorXd d = drift_factors(ens, v, 1.1);
    const auto cov = truncated_covariance(geo);
    for (std::size_t c = 0; c < ens.grid().size(); c += 7) {
      double drift = 0.0;
      for (const auto& ins : v) drift += ins.alpha.real() * cov(ens.grid().centers[c], embed_position(geo.kind(), ins.position));
      EXPECT_NEAR(d(c), std::exp(1.1 * drift), 1e-10 * d(c)) << to_string(geo.kind());
    }
  }
}

// Two cells and two insertion points carried by one Gaussian vector
// (X1, X2, Xa, Xb): weighting by Wick exponentials of Xa, Xb equals the pair
// factor exp(a b C_ab) times the expectation with drifted masses.
TEST(Vertex, GirsanovOnTwoCells) {
  Eigen::MatrixXd cov(4, 4);
  cov << 1.3, 0.4, 0.5, 0.2,
         0.4, 1.1, 0.1, 0.6,
         0.5, 0.1, 0.9, 0.3,
         0.2, 0.6, 0.3, 1.2;
  const double g = 0.9, a = 0.7, b = 0.5, s = 0.4;
  const double v1 = 0.3, v2 = 0.8;
  auto mass = [&](double x, double var, double vol) { return vol * std::exp(g * x - 0.5 * g * g * var); };
  const double lhs = oracle::gaussian_expectation(cov, 20, [&](const Eigen::VectorXd& x) {
    const double w = std::exp(a * x(2) - 0.5 * a * a * cov(2, 2) + b * x(3) - 0.5 * b * b * cov(3, 3));
    return w * std::pow(mass(x(0), cov(0, 0), v1) + mass(x(1), cov(1, 1), v2), -s);
  });

  const Eigen::MatrixXd cells = cov.topLeftCorner(2, 2);
  const CovarianceOracle c = [&](const Point3& cell, const Point3& point) {
    return cov(static_cast<int>(cell[0]), static_cast<int>(std::lround(point[0] * 10.0)));
  };
  // torus positions 0.2 and 0.3 stand for the vector entries 2 and 3
  const VertexInsertion ins[2] = {{a, SpherePoint(Complex(0.2))}, {b, SpherePoint(Complex(0.3))}};
  const double rhs = std::exp(a * b * cov(2, 3)) * oracle::gaussian_expectation(cells, 40, [&](const Eigen::VectorXd& x) {
    GmcAtoms atoms;
    atoms.geometry = SurfaceGeometry(GeometryKind::flat_torus, 4);
    atoms.gamma = g;
    atoms.cell_centers = {{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}};
    atoms.masses = {mass(x(0), cov(0, 0), v1), mass(x(1), cov(1, 1), v2)};
    return std::pow(vertex_weighted_mass(atoms, ins, c), -s);
  });
  EXPECT_NEAR(lhs, rhs, 1e-8 * std::abs(lhs));
}

// Integral of exp(b G(x, z)) over the unit sphere, G = -log|x - z| + kappa:
// 2 pi e^{b kappa} 2^{1-b} / (1 - b/2).
TEST(Vertex, AveragedDriftIntegratesGreenPower) {
  const double g = 1.0;
  for (int l : {16, 32}) {
    FieldEnsemble ens(SurfaceGeometry(GeometryKind::round_sphere, l));
    const Eigen::Map<const Eigen::VectorXd> vol = ens.volumes();
    for (double a : {0.6, 1.2, 1.8}) {
      const double b = g * a;
      const double oracle = 2.0 * std::numbers::pi * std::exp(b * fields::kSphereGreenConstant) *
                            std::pow(2.0, 1.0 - b) / (1.0 - 0.5 * b);
      for (Complex z : {Complex(0.0), Complex(0.4, 0.7), Complex(-1.3, 0.2)}) {
        const VertexInsertion v{a, SpherePoint(z)};
        const double total = vol.dot(averaged_drift_factors(ens, std::span(&v, 1), g));
        const double tol = z == Complex(0.0) ? 1e-9 : 1e-4;
        EXPECT_NEAR(total / oracle, 1.0, tol) << l << " " << a << " " << z;
      }
      const VertexInsertion inf{a, SpherePoint::infinity()};
      EXPECT_NEAR(vol.dot(averaged_drift_factors(ens, std::span(&inf, 1), g)) / oracle, 1.0, 1e-9);
    }
  }
  FieldEnsemble ens(SurfaceGeometry(GeometryKind::round_sphere, 8));
  const VertexInsertion v{2.1, SpherePoint(Complex(0.0))};
  EXPECT_THROW(averaged_drift_factors(ens, std::span(&v, 1), 1.0), PreconditionError);
  FieldEnsemble circle(SurfaceGeometry(GeometryKind::circle, 8));
  const VertexInsertion w{0.5, SpherePoint(Complex(0.0))};
  EXPECT_THROW(averaged_drift_factors(circle, std::span(&w, 1), 1.0), DomainError);
}
