#include "lcft/correlators/three_point.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "lcft/correlators/limits.hpp"
#include "lcft/errors.hpp"
#include "lcft/gmc/gmc.hpp"
#include "lcft/specfun/dozz.hpp"
#include "lcft/specfun/gamma.hpp"

namespace lcft::correlators {

double zero_mode_integral(double sigma, double gamma, double a) {
  if (!(sigma > 0.0 && gamma > 0.0 && a > 0.0)) {
    throw DomainError("zero_mode_integral: requires sigma, gamma, a > 0");
  }
  const double s = sigma / gamma;
  return std::exp(specfun::log_gamma(Complex(s)).real() - s * std::log(a)) / gamma;
}

ReducedCorrelator reduce_zero_mode(std::span<const VertexInsertion> insertions, const LiouvilleParams& params) {
  if (insertions.empty()) throw DomainError("reduce_zero_mode: no insertions");
  for (const auto& v : insertions) {
    if (v.alpha.imag() != 0.0) throw DomainError("reduce_zero_mode: weights must be real");
  }
  const SeibergVerdict verdict = seiberg_check(insertions, 2, params);
  if (verdict != SeibergVerdict::ok) {
    throw PreconditionError("Seiberg bound violated: " + std::string(to_string(verdict)));
  }
  const double g = params.gamma();
  const double kappa = kSphereGreenConstant;
  double total = 0.0;
  double pairs = 0.0;
  for (std::size_t i = 0; i < insertions.size(); ++i) {
    total += insertions[i].alpha.real();
    for (std::size_t j = i + 1; j < insertions.size(); ++j) {
      const double d = chordal_distance(insertions[i].position, insertions[j].position);
      if (!(d > 0.0)) throw PreconditionError("reduce_zero_mode: coincident insertion points");
      pairs += insertions[i].alpha.real() * insertions[j].alpha.real() * std::log(d);
    }
  }
  ReducedCorrelator r;
  r.insertions.assign(insertions.begin(), insertions.end());
  r.s_exponent = (total - 2.0 * params.Q()) / g;
  if (r.s_exponent < specfun::kLatticeTolerance) {
    throw PoleError("reduce_zero_mode: s = 0 (Gamma pole at the Seiberg boundary)");
  }
  r.log_gamma_factor = specfun::log_gamma(Complex(r.s_exponent)).real() - r.s_exponent * std::log(params.mu()) -
                       std::log(g);
  r.gamma_factor = std::exp(r.log_gamma_factor);
  r.log_prefactor = 0.5 * kappa * total * total - pairs - 0.5 * r.s_exponent * g * g * kappa;
  r.prefactor = std::exp(r.log_prefactor);
  return r;
}

MeanError ThreePointBatch::calibrated_ratio(int i, int reference) const {
  const auto n = weighted.rows();
  return ratio_of_means(std::span<const double>(weighted.col(i).data(), n),
                        std::span<const double>(weighted.col(reference).data(), n));
}

CorrelatorBatch correlator_mc_many(std::span<const std::vector<VertexInsertion>> configurations,
                                   const LiouvilleParams& params, int l_max, const MonteCarloOptions& options) {
  if (configurations.empty()) throw DomainError("correlator_mc: no configurations");
  const auto start = std::chrono::steady_clock::now();
  const double g = params.gamma();
  const int n_cfg = static_cast<int>(configurations.size());

  CorrelatorBatch batch;
  std::vector<double> s(n_cfg);
  for (int c = 0; c < n_cfg; ++c) {
    CorrelatorEstimate r;
    r.reduced = reduce_zero_mode(configurations[c], params);
    s[c] = r.reduced.s_exponent;
    batch.results.push_back(r);
  }

  gmc::FieldEnsemble ensemble(SurfaceGeometry(GeometryKind::round_sphere, l_max), options.grid);
  Eigen::MatrixXd drift(static_cast<Eigen::Index>(ensemble.grid().size()), n_cfg);
  for (int c = 0; c < n_cfg; ++c) {
    drift.col(c) = options.drift == DriftKernel::averaged
                       ? gmc::averaged_drift_factors(ensemble, configurations[c], g)
                       : gmc::drift_factors(ensemble, configurations[c], g);
  }

  const Eigen::VectorXd vol = ensemble.volumes();
  const double sigma2 = ensemble.sigma2();
  batch.samples = gmc::map_samples(
      ensemble, options.seed, options.n_samples, n_cfg, options.threads,
      [&](const Eigen::MatrixXd& f, std::uint64_t, Eigen::Ref<Eigen::MatrixXd> out) {
        Eigen::MatrixXd masses;
        gmc::wick_masses(f, g, sigma2, vol, masses);
        const Eigen::MatrixXd z = masses.transpose() * drift;  // count x configs
        for (Eigen::Index k = 0; k < z.rows(); ++k) {
          for (int c = 0; c < n_cfg; ++c) out(k, c) = std::pow(z(k, c), -s[c]);
        }
      });

  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (int c = 0; c < n_cfg; ++c) {
    CorrelatorEstimate& r = batch.results[c];
    const std::span<const double> col(batch.samples.col(c).data(), static_cast<std::size_t>(batch.samples.rows()));
    r.expectation = make_estimate(col, options.seed, true);
    r.expectation.runtime_seconds = elapsed;
    const double factor = r.reduced.prefactor * r.reduced.gamma_factor;
    r.estimate = r.expectation;
    r.estimate.mean *= factor;
    r.estimate.std_error *= factor;
    r.estimate.median_of_means *= factor;
    r.estimate.median_of_means_band *= factor;
  }
  return batch;
}

ThreePointBatch three_point_mc_many(std::span<const Triple> triples, const LiouvilleParams& params, int l_max,
                                    const MonteCarloOptions& options) {
  if (triples.empty()) throw DomainError("three_point_mc: no weight tuples");
  std::vector<std::vector<VertexInsertion>> configs;
  std::vector<double> exact;
  for (const Triple& t : triples) {
    configs.emplace_back(t.begin(), t.end());
    reduce_zero_mode(t, params);  // Seiberg and coincidence errors before the DOZZ evaluation
    exact.push_back(specfun::three_point_exact(t, params).real());
  }
  const CorrelatorBatch raw = correlator_mc_many(configs, params, l_max, options);

  ThreePointBatch batch;
  batch.l_max = l_max;
  batch.weighted.resize(raw.samples.rows(), raw.samples.cols());
  for (std::size_t c = 0; c < triples.size(); ++c) {
    ThreePointResult r;
    r.insertions = triples[c];
    r.reduced = raw.results[c].reduced;
    r.expectation = raw.results[c].expectation;
    r.estimate = raw.results[c].estimate;
    r.exact = exact[c];
    r.ratio = r.estimate.mean / r.exact;
    r.ratio_error = r.estimate.std_error / std::abs(r.exact);
    const double factor = r.reduced.prefactor * r.reduced.gamma_factor;
    batch.weighted.col(static_cast<Eigen::Index>(c)) = raw.samples.col(static_cast<Eigen::Index>(c)) * (factor / r.exact);
    batch.results.push_back(r);
  }
  return batch;
}

ThreePointResult three_point_mc(const Triple& insertions, const LiouvilleParams& params,
                                const SurfaceGeometry& geometry, std::int64_t n_samples, std::uint64_t seed,
                                int threads) {
  if (geometry.kind() != GeometryKind::round_sphere) {
    throw DomainError("three_point_mc: requires the round sphere geometry");
  }
  MonteCarloOptions opt;
  opt.n_samples = n_samples;
  opt.seed = seed;
  opt.threads = threads;
  const Triple t[1] = {insertions};
  return three_point_mc_many(t, params, geometry.resolution(), opt).results.front();
}

}  // namespace lcft::correlators
