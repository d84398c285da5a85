#pragma once

// Finite-dimensional Gaussian expectations by tensor Gauss-Hermite quadrature.

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

struct HermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;  // sum to one, weight exp(-x^2/2)/sqrt(2 pi)
};

// Golub-Welsch on the probabilists' Hermite Jacobi matrix.
inline HermiteRule gauss_hermite(int n) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) j(k, k - 1) = j(k - 1, k) = std::sqrt(double(k));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  HermiteRule r;
  for (int k = 0; k < n; ++k) {
    r.nodes.push_back(es.eigenvalues()(k));
    const double v = es.eigenvectors()(0, k);
    r.weights.push_back(v * v);
  }
  return r;
}

// E[f(X)] for X ~ N(0, cov) in dimension cov.rows().
inline double gaussian_expectation(const Eigen::MatrixXd& cov, int n_nodes,
                                   const std::function<double(const Eigen::VectorXd&)>& f) {
  const int d = static_cast<int>(cov.rows());
  const Eigen::MatrixXd l = cov.llt().matrixL();
  const HermiteRule rule = gauss_hermite(n_nodes);
  std::vector<int> idx(d, 0);
  double total = 0.0;
  Eigen::VectorXd z(d);
  for (;;) {
    double w = 1.0;
    for (int k = 0; k < d; ++k) {
      z(k) = rule.nodes[idx[k]];
      w *= rule.weights[idx[k]];
    }
    total += w * f(l * z);
    int k = 0;
    while (k < d && ++idx[k] == n_nodes) idx[k++] = 0;
    if (k == d) break;
  }
  return total;
}

}  // namespace oracle
