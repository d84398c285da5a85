#include <benchmark/benchmark.h>

#include "lcft/correlators/limits.hpp"
#include "lcft/correlators/three_point.hpp"
#include "lcft/fields/field.hpp"
#include "lcft/gmc/ensemble.hpp"
#include "lcft/specfun/dozz.hpp"
#include "lcft/specfun/upsilon.hpp"
#include "lcft/spectrum/toy.hpp"
#include "lcft/virasoro/block.hpp"
#include "lcft/virasoro/verma.hpp"

using namespace lcft;

static void BM_UpsilonStrip(benchmark::State& state) {
  const specfun::UpsilonEvaluator u(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(u.value(Complex(1.1, 0.4)));
}
BENCHMARK(BM_UpsilonStrip);

static void BM_UpsilonShifted(benchmark::State& state) {
  const specfun::UpsilonEvaluator u(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(u.value(Complex(-6.3, 2.0)));
}
BENCHMARK(BM_UpsilonShifted);

static void BM_Dozz(benchmark::State& state) {
  const LiouvilleParams p(1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(specfun::dozz(1.9, 1.8, 1.7, p));
}
BENCHMARK(BM_Dozz);

static void BM_GramExact(benchmark::State& state) {
  const virasoro::Rational d(7, 3), c(51, 2);
  for (auto _ : state) benchmark::DoNotOptimize(virasoro::gram_matrix(static_cast<int>(state.range(0)), d, c));
}
BENCHMARK(BM_GramExact)->Arg(4)->Arg(6)->Arg(8);

static void BM_BlockCoefficients(benchmark::State& state) {
  const std::array<Complex, 4> ext{1.8, 1.9, 1.7, 2.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(virasoro::block_coefficients(ext, Complex(7.3, 0.0), Complex(38.5, 0.0),
                                                          static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_BlockCoefficients)->Arg(4)->Arg(6)->Arg(8)->Arg(10);

static void BM_CircleSample(benchmark::State& state) {
  const fields::CircleSampler s(static_cast<int>(state.range(0)));
  std::uint64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(s.sample(1, i++));
}
BENCHMARK(BM_CircleSample)->Arg(256)->Arg(4096);

static void BM_TorusSample(benchmark::State& state) {
  const fields::TorusSampler s(static_cast<int>(state.range(0)));
  std::uint64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(s.sample(1, i++));
}
BENCHMARK(BM_TorusSample)->Arg(32)->Arg(128);

static void BM_SphereBatch(benchmark::State& state) {
  const gmc::FieldEnsemble e(SurfaceGeometry(GeometryKind::round_sphere, static_cast<int>(state.range(0))));
  Eigen::MatrixXd out;
  std::uint64_t first = 0;
  for (auto _ : state) {
    e.sample_batch(1, first, e.batch_size(), out);
    first += e.batch_size();
  }
  state.SetItemsProcessed(state.iterations() * e.batch_size());
}
BENCHMARK(BM_SphereBatch)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_ThreePointMc(benchmark::State& state) {
  const LiouvilleParams p(1.0, 1.0);
  const correlators::Triple t{VertexInsertion{1.9, SpherePoint(Complex(0.0))},
                              VertexInsertion{1.8, SpherePoint(Complex(1.0))},
                              VertexInsertion{1.7, SpherePoint::infinity()}};
  correlators::MonteCarloOptions o;
  o.n_samples = 1000;
  o.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(correlators::three_point_mc_many(std::span(&t, 1), p, static_cast<int>(state.range(0)), o));
  }
  state.SetItemsProcessed(state.iterations() * o.n_samples);
}
BENCHMARK(BM_ThreePointMc)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_BootstrapNode(benchmark::State& state) {
  const LiouvilleParams p(1.0, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(correlators::bootstrap_integrand(2.3, 0.2, {1.8, 1.8, 1.8, 1.8}, p, 6));
  }
}
BENCHMARK(BM_BootstrapNode)->Unit(benchmark::kMillisecond);

static void BM_ToySolve(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(spectrum::toy_solve(1.0, 1.0));
}
BENCHMARK(BM_ToySolve)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
