#include "lcft/virasoro/block.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "lcft/errors.hpp"

namespace lcft::virasoro {
namespace {

Eigen::MatrixXcd to_eigen(const DenseMatrix<Complex>& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  }
  return out;
}

}  // namespace

KacWeight kac_weight(int r, int s, const LiouvilleParams& params) {
  if (r < 1 || s < 1) throw DomainError("kac_weight: r and s must be positive");
  const double g = params.gamma();
  const Complex alpha = params.Q() - r * g / 2.0 - 2.0 * s / g;
  return {alpha, params.delta(alpha)};
}

double relative_gram_determinant(int level, Complex delta, Complex c) {
  const auto g = gram_matrix<Complex>(level, delta, c);
  const Eigen::MatrixXcd m = to_eigen(g.entries);
  const double det = std::abs(m.fullPivLu().determinant());
  double scale = 1.0;
  for (int i = 0; i < m.rows(); ++i) scale *= m.row(i).norm();
  if (scale == 0.0) return 0.0;
  return det / scale;
}

std::vector<KacResidual> kac_determinant_zero_check(int level, const LiouvilleParams& params) {
  if (level < 1 || level > 8) throw DomainError("kac_determinant_zero_check: level must lie in [1, 8]");
  std::vector<KacResidual> out;
  const Complex c = params.central_charge();
  for (int r = 1; r <= level; ++r) {
    for (int s = 1; r * s <= level; ++s) {
      const KacWeight w = kac_weight(r, s, params);
      out.push_back({r, s, relative_gram_determinant(level, w.delta, c)});
    }
  }
  return out;
}

BlockSeries block_coefficients(const std::array<Complex, 4>& ext, Complex internal, Complex c,
                               int n_max) {
  if (n_max < 0 || n_max > kMaxBlockLevel) {
    throw DomainError("block_coefficients: n_max must lie in [0, " +
                      std::to_string(kMaxBlockLevel) + "]");
  }
  BlockSeries out;
  out.external = ext;
  out.internal = internal;
  out.c = c;
  out.coefficients.push_back(1.0);
  VermaModule<Complex> module(internal, c);
  for (int level = 1; level <= n_max; ++level) {
    const auto basis = partitions(level);
    const int n = static_cast<int>(basis.size());
    Eigen::MatrixXcd g(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        const Complex v = module.inner(basis[i], basis[j]);
        g(i, j) = v;
        g(j, i) = v;
      }
    }
    Eigen::VectorXd scale(n);
    for (int i = 0; i < n; ++i) {
      const double d = std::abs(g(i, i));
      scale(i) = d > 0.0 ? 1.0 / std::sqrt(d) : 1.0;
    }
    const Eigen::MatrixXcd gs = scale.asDiagonal() * g * scale.asDiagonal();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(gs);
    const auto& sv = svd.singularValues();
    const double cond = sv(n - 1) > 0.0 ? sv(0) / sv(n - 1) : std::numeric_limits<double>::infinity();
    out.max_condition = std::max(out.max_condition, cond);
    if (!(cond <= kDegenerateCondition)) {
      std::ostringstream os;
      os << "block_coefficients: Gram matrix at level " << level << " is degenerate for Delta = "
         << internal << " (condition " << cond << ")";
      throw DegenerateWeightError(os.str());
    }
    Eigen::VectorXcd left(n), right(n);
    for (int i = 0; i < n; ++i) {
      left(i) = ward_element(ext[0], ext[1], internal, basis[i].parts());
      right(i) = ward_element(ext[3], ext[2], internal, basis[i].parts());
    }
    const Eigen::VectorXcd y = gs.fullPivLu().solve(scale.asDiagonal() * right);
    const Eigen::VectorXcd x = scale.asDiagonal() * y;
    out.coefficients.push_back(left.transpose() * x);
  }
  return out;
}

std::vector<Rational> block_coefficients_exact(const std::array<Rational, 4>& ext,
                                               const Rational& internal, const Rational& c,
                                               int n_max) {
  if (n_max < 0 || n_max > kMaxBlockLevel) {
    throw DomainError("block_coefficients_exact: n_max must lie in [0, " +
                      std::to_string(kMaxBlockLevel) + "]");
  }
  std::vector<Rational> out{Rational(1)};
  VermaModule<Rational> module(internal, c);
  for (int level = 1; level <= n_max; ++level) {
    const GramMatrix<Rational> g = module.gram(level);
    const int n = static_cast<int>(g.basis.size());
    std::vector<Rational> right(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) right[i] = ward_element(ext[3], ext[2], internal, g.basis[i].parts());
    const std::vector<Rational> x = exact_solve(g.entries, right);
    Rational sum(0);
    for (int i = 0; i < n; ++i) sum += ward_element(ext[0], ext[1], internal, g.basis[i].parts()) * x[i];
    out.push_back(sum);
  }
  return out;
}

double spectrum_weight(double p, double Q) { return 0.25 * (Q * Q + p * p); }

BlockValue evaluate_block(const BlockSeries& series, Complex z) {
  BlockValue v;
  Complex power = 1.0;
  Complex sum = 0.0;
  Complex last = 0.0;
  for (const Complex& a : series.coefficients) {
    last = a * power;
    sum += last;
    power *= z;
  }
  v.series_sum = sum;
  v.truncation = std::abs(sum) > 0.0 ? std::abs(last) / std::abs(sum) : 0.0;
  const Complex exponent = series.internal - series.external[0] - series.external[1];
  v.value = (z == Complex(0.0)) ? Complex(0.0) : std::exp(exponent * std::log(z)) * sum;
  v.series = series;
  return v;
}

BlockValue four_point_block(Complex z, double p, const std::array<Complex, 4>& alphas,
                            const LiouvilleParams& params, int n_max) {
  if (!(std::abs(z) < 1.0)) throw DomainError("four_point_block: requires |z| < 1");
  const double Q = params.Q();
  std::array<Complex, 4> ext;
  for (int i = 0; i < 4; ++i) ext[i] = params.delta(alphas[i]);
  const BlockSeries s = block_coefficients(ext, spectrum_weight(p, Q), params.central_charge(), n_max);
  return evaluate_block(s, z);
}

}  // namespace lcft::virasoro
