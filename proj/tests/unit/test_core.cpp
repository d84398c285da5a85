#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "lcft/core/params.hpp"
#include "lcft/errors.hpp"

using namespace lcft;

TEST(Params, BackgroundChargeAndCentralCharge) {
  LiouvilleParams p(1.0, 1.0);
  EXPECT_DOUBLE_EQ(p.Q(), 2.5);
  EXPECT_DOUBLE_EQ(p.central_charge(), 38.5);
  const auto dc = derived_constants(LiouvilleParams(std::sqrt(2.0), 1.0));
  EXPECT_NEAR(dc.Q, 3.0 / std::sqrt(2.0), 1e-15);
  EXPECT_GT(dc.central_charge, 25.0);
}

TEST(Params, RejectsInvalid) {
  EXPECT_THROW(LiouvilleParams(0.0, 1.0), DomainError);
  EXPECT_THROW(LiouvilleParams(2.0, 1.0), DomainError);
  EXPECT_THROW(LiouvilleParams(1.0, 0.0), DomainError);
  EXPECT_THROW(LiouvilleParams(1.0, -1.0), DomainError);
  EXPECT_THROW(SurfaceGeometry(GeometryKind::circle, 3), DomainError);
}

TEST(Params, QAboveTwoOnRange) {
  for (double g = 0.05; g < 2.0; g += 0.05) EXPECT_GT(background_charge(g), 2.0);
}

TEST(Params, WeightDuality) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (double g : {0.4, 1.0, 1.7}) {
    const double Q = background_charge(g);
    for (int i = 0; i < 1000; ++i) {
      const Complex a(u(rng), u(rng));
      const Complex d1 = conformal_weight(a, Q);
      const Complex d2 = conformal_weight(2.0 * Q - a, Q);
      EXPECT_NEAR(std::abs(d1 - d2), 0.0, 1e-13 * (1.0 + std::abs(d1)));
    }
  }
}

TEST(Params, ChordalDistance) {
  const SpherePoint zero(Complex(0.0)), one(Complex(1.0)), inf = SpherePoint::infinity();
  EXPECT_NEAR(chordal_distance(zero, inf), 2.0, 1e-15);
  EXPECT_NEAR(chordal_distance(zero, one), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(chordal_distance(one, inf), std::sqrt(2.0), 1e-15);
  // agrees with the Euclidean distance of the embedded points
  const SpherePoint a(Complex(0.3, -1.2)), b(Complex(-2.0, 0.5));
  const auto ea = a.embed(), eb = b.embed();
  const double euclid =
      std::sqrt(std::pow(ea.x - eb.x, 2) + std::pow(ea.y - eb.y, 2) + std::pow(ea.z - eb.z, 2));
  EXPECT_NEAR(chordal_distance(a, b), euclid, 1e-14);
  EXPECT_NEAR(round_metric_density(Complex(0.0)), 4.0, 0.0);
}

TEST(Seiberg, Examples) {
  LiouvilleParams p(1.0, 1.0);
  auto ins = [](std::vector<double> a) {
    std::vector<VertexInsertion> v;
    for (double x : a) v.push_back({Complex(x), SpherePoint(Complex(0.0))});
    return v;
  };
  EXPECT_EQ(seiberg_check(ins({1.8, 1.8, 1.8}), 2, p), SeibergVerdict::ok);
  EXPECT_EQ(seiberg_check(ins({1.2, 1.2, 1.2}), 2, p), SeibergVerdict::violates_sum);
  EXPECT_EQ(seiberg_check(ins({2.6, 1.8, 1.8}), 2, p), SeibergVerdict::violates_individual);
  EXPECT_THROW(seiberg_check(std::vector<VertexInsertion>{}, 2, p), DomainError);
}

TEST(Seiberg, MonotoneInWeights) {
  LiouvilleParams p(1.0, 1.0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.5, 2.4);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<VertexInsertion> v(3);
    for (auto& x : v) x.alpha = u(rng);
    if (seiberg_check(v, 2, p) != SeibergVerdict::ok) continue;
    const int j = trial % 3;
    v[j].alpha = std::min(v[j].alpha.real() + 0.5 * (p.Q() - v[j].alpha.real()), 2.49);
    EXPECT_EQ(seiberg_check(v, 2, p), SeibergVerdict::ok);
  }
}

TEST(Geometry, VolumesAndEuler) {
  EXPECT_EQ(SurfaceGeometry(GeometryKind::round_sphere, 8).euler_characteristic(), 2);
  EXPECT_EQ(SurfaceGeometry(GeometryKind::flat_torus, 8).euler_characteristic(), 0);
  EXPECT_NEAR(SurfaceGeometry(GeometryKind::round_sphere, 8).volume(), 4.0 * M_PI, 1e-15);
  EXPECT_EQ(geometry_kind_from_string("torus"), GeometryKind::flat_torus);
  EXPECT_THROW(geometry_kind_from_string("disk"), DomainError);
}
