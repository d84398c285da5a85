#include "lcft/correlators/limits.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "lcft/errors.hpp"
#include "lcft/specfun/dozz.hpp"
#include "lcft/util/parallel.hpp"
#include "lcft/virasoro/block.hpp"

namespace lcft::correlators {

TwoPointLimitResult two_point_limit_mc(double alpha, const LiouvilleParams& params, std::span<const double> epsilons,
                                       int l_max, const MonteCarloOptions& options) {
  const double Q = params.Q();
  const double g = params.gamma();
  if (epsilons.empty()) throw DomainError("two_point_limit_mc: empty epsilon list");
  if (!(alpha < Q)) throw PreconditionError("two_point_limit_mc: requires alpha < Q");
  for (double e : epsilons) {
    if (!(e > 0.0) || !(2.0 * alpha + e > 2.0 * Q)) {
      std::ostringstream os;
      os << "two_point_limit_mc: epsilon = " << e << " violates 2 alpha + epsilon > 2Q (needs epsilon > "
         << 2.0 * (Q - alpha) << ")";
      throw PreconditionError(os.str());
    }
  }

  TwoPointLimitResult out;
  out.alpha = alpha;
  out.reference_alpha = (2.0 * Q + 0.4 * g) / 3.0;
  out.epsilons.assign(epsilons.begin(), epsilons.end());
  out.target = 4.0 * specfun::reflection(alpha, params).real();

  const auto at = [](double a, Complex z) { return VertexInsertion{a, SpherePoint(z)}; };
  const auto inf = [](double a) { return VertexInsertion{a, SpherePoint::infinity()}; };
  std::vector<Triple> triples{{at(out.reference_alpha, 0.0), at(out.reference_alpha, 1.0), inf(out.reference_alpha)}};
  for (double e : epsilons) triples.push_back({at(alpha, 0.0), at(e, 1.0), inf(alpha)});
  const ThreePointBatch batch = three_point_mc_many(triples, params, l_max, options);

  for (std::size_t k = 0; k < epsilons.size(); ++k) {
    const double e = epsilons[k];
    const double exact = e * specfun::dozz(alpha, e, alpha, params).real();
    const MeanError r = batch.calibrated_ratio(static_cast<int>(k + 1), 0);
    McEstimate est = batch.results[k + 1].expectation;
    est.mean = exact * r.mean;
    est.std_error = std::abs(exact) * r.std_error;
    est.has_median_of_means = false;
    est.median_of_means = est.median_of_means_band = 0.0;
    out.exact.push_back(exact);
    out.ratios.push_back(r.mean);
    out.ratio_errors.push_back(r.std_error);
    out.estimates.push_back(est);
  }

  // Weighted polynomial fit of ratio against epsilon (straight line for two
  // points, quadratic from three), read off at the Seiberg boundary
  // epsilon = 2(Q - alpha), where s = 0 and the cutoff bias vanishes. The exact
  // ratio is constant in epsilon, so this is also its epsilon -> 0 value.
  const double boundary = 2.0 * (Q - alpha);
  const int n = static_cast<int>(epsilons.size());
  const int degree = n >= 3 ? 2 : 1;
  Eigen::MatrixXd design(n, degree + 1);
  Eigen::VectorXd rhs(n);
  for (int k = 0; k < n; ++k) {
    const double w = 1.0 / std::max(out.ratio_errors[k], 1e-300);
    const double x = epsilons[k] - boundary;
    for (int d = 0; d <= degree; ++d) design(k, d) = w * std::pow(x, d);
    rhs(k) = w * out.ratios[k];
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() <= degree) throw DomainError("two_point_limit_mc: epsilons must not coincide");
  out.extrapolated_ratio = qr.solve(rhs)(0);
  const Eigen::MatrixXd cov = (design.transpose() * design).inverse();
  out.extrapolated_error = std::sqrt(cov(0, 0));
  return out;
}

BootstrapNode bootstrap_integrand(double p, Complex z, const std::array<double, 4>& alphas,
                                  const LiouvilleParams& params, int n_max) {
  BootstrapNode node;
  node.p = p;
  const Complex internal(params.Q(), p);
  const auto structure = [&](double a, double b, Complex& out) {
    const specfun::DozzResult r = specfun::evaluate_dozz(internal, a, b, params);
    if (r.pole) return false;
    out = r.zero ? Complex(0.0) : r.value;
    return true;
  };
  if (!structure(alphas[0], alphas[1], node.c12) || !structure(alphas[2], alphas[3], node.c34)) {
    node.skipped = true;
    node.reason = "structure constant pole";
    return node;
  }
  try {
    const std::array<Complex, 4> ext{alphas[0], alphas[1], alphas[2], alphas[3]};
    const virasoro::BlockValue b = virasoro::four_point_block(z, std::abs(p), ext, params, n_max);
    node.block = b.value;
    node.block_truncation = b.truncation;
  } catch (const DegenerateWeightError& e) {
    node.skipped = true;
    node.reason = e.what();
    return node;
  }
  node.integrand = std::conj(node.c12) * node.c34 * std::norm(node.block);
  return node;
}

BootstrapResult four_point_bootstrap(Complex z, const std::array<double, 4>& alphas, const LiouvilleParams& params,
                                     double p_max, int n_p, int n_max, int threads) {
  const double Q = params.Q();
  if (!(std::abs(z) < 1.0)) throw DomainError("four_point_bootstrap: requires |z| < 1");
  if (!(p_max > 0.0) || n_p < 3) throw DomainError("four_point_bootstrap: requires p_max > 0 and n_p >= 3");
  if (!(alphas[0] + alphas[1] > Q) || !(alphas[2] + alphas[3] > Q)) {
    throw PreconditionError("four_point_bootstrap: requires a1 + a2 > Q and a3 + a4 > Q");
  }

  BootstrapResult out;
  out.curve.resize(static_cast<std::size_t>(n_p));
  const double h = p_max / double(n_p - 1);
  parallel_for(n_p, resolve_threads(threads), [&](std::int64_t k) {
    out.curve[static_cast<std::size_t>(k)] = bootstrap_integrand(double(k) * h, z, alphas, params, n_max);
  });

  std::vector<Complex> f(out.curve.size());
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (out.curve[k].skipped) {
      out.skipped.push_back(out.curve[k].p);
      continue;
    }
    f[k] = out.curve[k].integrand;
    out.peak = std::max(out.peak, std::abs(f[k]));
  }
  // Bridge skipped nodes linearly between their valid neighbours.
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (!out.curve[k].skipped) continue;
    std::size_t lo = k, hi = k;
    while (lo > 0 && out.curve[lo].skipped) --lo;
    while (hi + 1 < f.size() && out.curve[hi].skipped) ++hi;
    const bool lo_ok = !out.curve[lo].skipped, hi_ok = !out.curve[hi].skipped;
    if (lo_ok && hi_ok) {
      const double t = double(k - lo) / double(hi - lo);
      f[k] = (1.0 - t) * f[lo] + t * f[hi];
    } else {
      f[k] = lo_ok ? f[lo] : (hi_ok ? f[hi] : Complex(0.0));
    }
  }

  // Composite Simpson; an even node count closes with one trapezoid panel.
  const std::size_t n = f.size();
  const std::size_t simpson_end = (n % 2 == 1) ? n - 1 : n - 2;
  Complex sum = 0.0;
  for (std::size_t k = 0; k + 2 <= simpson_end; k += 2) sum += h / 3.0 * (f[k] + 4.0 * f[k + 1] + f[k + 2]);
  if (simpson_end != n - 1) sum += 0.5 * h * (f[n - 2] + f[n - 1]);
  out.integral = sum;

  double trunc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (!out.curve[k].skipped) trunc += 2.0 * out.curve[k].block_truncation * std::abs(f[k]) * h;
  }
  out.truncation_estimate = trunc;
  const double last = std::abs(f[n - 1]), before = std::abs(f[n - 2]);
  out.tail_ratio = out.peak > 0.0 ? last / out.peak : 0.0;
  out.tail_estimate = (before > last && last > 0.0) ? last * h / std::log(before / last) : last * p_max;
  return out;
}

}  // namespace lcft::correlators
