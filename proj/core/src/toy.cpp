#include "lcft/spectrum/toy.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "lcft/errors.hpp"
#include "lcft/specfun/gamma.hpp"

namespace lcft::spectrum {
namespace {

constexpr double kSeedMinU = 12.0;
constexpr double kSeedDefaultU = 40.0;
constexpr int kFitWavelengths = 4;

double u_of(double c, double gamma) { return 2.0 * std::numbers::sqrt2 / gamma * std::exp(0.5 * gamma * c); }
double c_of(double u, double gamma) { return 2.0 / gamma * std::log(u * gamma / (2.0 * std::numbers::sqrt2)); }

// One step of the three-stage Gauss-Legendre method for y' = [[0,1],[V(c),0]] y
// with V(c) = 2 e^{gamma c} - p^2, returned as the 2x2 propagator.
Eigen::Matrix2d gauss_step(double c0, double h, double p, double gamma) {
  static const double r = std::sqrt(15.0);
  static const double node[3] = {0.5 - r / 10.0, 0.5, 0.5 + r / 10.0};
  static const double a[3][3] = {{5.0 / 36.0, 2.0 / 9.0 - r / 15.0, 5.0 / 36.0 - r / 30.0},
                                 {5.0 / 36.0 + r / 24.0, 2.0 / 9.0, 5.0 / 36.0 - r / 24.0},
                                 {5.0 / 36.0 + r / 30.0, 2.0 / 9.0 + r / 15.0, 5.0 / 36.0}};
  static const double b[3] = {5.0 / 18.0, 4.0 / 9.0, 5.0 / 18.0};

  Eigen::Matrix2d stage[3];
  for (int i = 0; i < 3; ++i) {
    const double v = 2.0 * std::exp(gamma * (c0 + node[i] * h)) - p * p;
    stage[i] << 0.0, 1.0, v, 0.0;
  }
  // K_i - h A_i sum_j a_ij K_j = A_i y0, solved for y0 = each unit vector.
  Eigen::Matrix<double, 6, 6> m = Eigen::Matrix<double, 6, 6>::Identity();
  Eigen::Matrix<double, 6, 2> rhs;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m.block<2, 2>(2 * i, 2 * j) -= h * a[i][j] * stage[i];
    rhs.block<2, 2>(2 * i, 0) = stage[i];
  }
  const Eigen::Matrix<double, 6, 2> k = m.partialPivLu().solve(rhs);
  Eigen::Matrix2d out = Eigen::Matrix2d::Identity();
  for (int i = 0; i < 3; ++i) out += h * b[i] * k.block<2, 2>(2 * i, 0);
  return out;
}

}  // namespace

BesselKValue bessel_k_large_u(Complex nu, double u) {
  if (!(u > 0.0)) throw DomainError("bessel_k_large_u: requires u > 0");
  const Complex mu = 4.0 * nu * nu;
  Complex a = 1.0;
  Complex sum = 1.0;
  Complex dsum = 0.0;
  double last = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    a *= (mu - odd * odd) / (8.0 * k * u);
    const double size = std::abs(a);
    if (size > last) break;
    sum += a;
    dsum -= double(k) * a / u;
    last = size;
    if (size < 1e-17 * std::abs(sum)) break;
  }
  const double pre = std::sqrt(std::numbers::pi / (2.0 * u)) * std::exp(-u);
  return {pre * sum, pre * (dsum - (1.0 + 0.5 / u) * sum)};
}

Complex toy_reflection_closed_form(double p, double gamma) {
  const LiouvilleParams check(gamma, 1.0);
  (void)check;
  if (!(p > 0.0)) throw DomainError("toy_reflection_closed_form: requires p > 0");
  const Complex nu(0.0, 2.0 * p / gamma);
  return std::exp(specfun::log_gamma(nu) - specfun::log_gamma(-nu) -
                  2.0 * nu * std::log(std::numbers::sqrt2 / gamma));
}

double toy_spectrum_edge(double gamma) {
  const LiouvilleParams params(gamma, 1.0);
  return 0.5 * params.Q() * params.Q();
}

ToyScatteringSolution toy_solve(double p, double gamma, double c_min, double c_max, double tol) {
  ToyOptions o;
  o.c_min = c_min;
  o.c_max = c_max;
  o.tol = tol;
  return toy_solve(p, gamma, o);
}

ToyScatteringSolution toy_solve(double p, double gamma, const ToyOptions& options) {
  const LiouvilleParams check(gamma, 1.0);
  (void)check;
  if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("toy_solve: requires p > 0");
  const double tol = options.tol;
  if (!(tol >= 1e-14 && tol <= 1e-2)) throw DomainError("toy_solve: tol must lie in [1e-14, 1e-2]");
  if (!(options.step_factor > 0.0)) throw DomainError("toy_solve: step_factor must be positive");

  const double width = kFitWavelengths * 2.0 * std::numbers::pi / p;
  const double c_max = std::isnan(options.c_max) ? c_of(kSeedDefaultU, gamma) : options.c_max;
  const double c_min =
      std::isnan(options.c_min) ? std::log(tol * gamma * gamma / 2.0) / gamma - 1.0 - width : options.c_min;
  const double c_turn = std::log(0.5 * p * p) / gamma;
  const double c_fit = c_min + width;
  if (u_of(c_max, gamma) < kSeedMinU) {
    throw PreconditionError("toy_solve: c_max too small for the Bessel-K seed (needs u >= 12)");
  }
  if (2.0 / (gamma * gamma) * std::exp(gamma * c_fit) > tol || c_fit >= c_turn) {
    throw PreconditionError("toy_solve: c_min not deep enough in the free region for the plane-wave fit");
  }

  // Scaled step: h k <= eta with k the local growth/oscillation rate.
  const double eta = 0.5 * std::pow(tol, 1.0 / 6.0) * options.step_factor;
  if (eta > 0.5) throw ConvergenceError("toy_solve: step too coarse to resolve the turning point");
  const auto rate = [&](double c) { return std::max(p, std::numbers::sqrt2 * std::exp(0.5 * gamma * c)); };

  std::vector<double> grid{c_max};
  std::vector<Eigen::Matrix2d> steps;
  double c = c_max;
  while (c > c_fit) {
    double h = eta / rate(c);
    h = std::min(h, eta / rate(c - h));  // rate decreases leftward; guard the far end
    if (c - h < c_fit || c - h - c_fit < 0.25 * h) h = c - c_fit;
    steps.push_back(gauss_step(c, -h, p, gamma));
    c = (h == c - c_fit) ? c_fit : c - h;
    grid.push_back(c);
    if (steps.size() > options.max_steps) throw ConvergenceError("toy_solve: step budget exhausted");
  }
  const std::size_t fit_first = grid.size() - 1;
  const std::size_t n_fit = static_cast<std::size_t>(std::ceil(width * p / eta));
  if (steps.size() + n_fit > options.max_steps) throw ConvergenceError("toy_solve: step budget exhausted");
  const double h_fit = width / double(n_fit);
  for (std::size_t j = 1; j <= n_fit; ++j) {
    steps.push_back(gauss_step(c_fit - double(j - 1) * h_fit, -h_fit, p, gamma));
    grid.push_back(j == n_fit ? c_min : c_fit - double(j) * h_fit);
  }

  const std::size_t n = grid.size();
  ToyScatteringSolution sol;
  sol.p = p;
  sol.gamma = gamma;
  sol.turning_point = c_turn;
  sol.steps = steps.size();
  sol.psi.resize(n);
  sol.psi_prime.resize(n);

  // Decaying solution, seeded at c_max and marched leftward.
  const Complex nu(0.0, 2.0 * p / gamma);
  const double u_max = u_of(c_max, gamma);
  const BesselKValue seed = bessel_k_large_u(nu, u_max);
  Eigen::Vector2cd y(seed.value, seed.derivative * (0.5 * gamma * u_max));
  sol.psi[0] = y(0);
  sol.psi_prime[0] = y(1);
  for (std::size_t k = 0; k < steps.size(); ++k) {
    y = steps[k].cast<Complex>() * y;
    sol.psi[k + 1] = y(0);
    sol.psi_prime[k + 1] = y(1);
  }

  // Second solution e^{ipc} at the far left, marched rightward with the inverse
  // propagators; the Wronskian of the pair must not move.
  const Complex i(0.0, 1.0);
  Eigen::Vector2cd z(std::exp(i * p * c_min), i * p * std::exp(i * p * c_min));
  const Complex w0 = sol.psi[n - 1] * z(1) - sol.psi_prime[n - 1] * z(0);
  double drift = 0.0;
  for (std::size_t k = steps.size(); k-- > 0;) {
    z = steps[k].inverse().cast<Complex>() * z;
    const Complex w = sol.psi[k] * z(1) - sol.psi_prime[k] * z(0);
    drift = std::max(drift, std::abs(w - w0) / std::abs(w0));
  }
  sol.wronskian_drift = drift;

  // Plane-wave least squares on the uniform fit window.
  const std::size_t m = n - fit_first;
  Eigen::MatrixXcd basis(static_cast<Eigen::Index>(m), 2);
  Eigen::VectorXcd data(static_cast<Eigen::Index>(m));
  for (std::size_t j = 0; j < m; ++j) {
    const double cj = grid[fit_first + j];
    basis(static_cast<Eigen::Index>(j), 0) = std::exp(i * p * cj);
    basis(static_cast<Eigen::Index>(j), 1) = std::exp(-i * p * cj);
    data(static_cast<Eigen::Index>(j)) = sol.psi[fit_first + j];
  }
  const Eigen::Vector2cd coef = basis.colPivHouseholderQr().solve(data);
  sol.amplitude_in = coef(0);
  sol.amplitude_out = coef(1);
  sol.R_mod = coef(1) / coef(0);
  sol.fit_residual = (basis * coef - data).norm() / data.norm();

  // Frequency from the three-term recurrence psi_{j+1} + psi_{j-1} = 2 cos(k h) psi_j.
  double num = 0.0, den = 0.0;
  for (std::size_t j = 1; j + 1 < m; ++j) {
    const Complex pj = sol.psi[fit_first + j];
    num += std::real(std::conj(pj) * (sol.psi[fit_first + j + 1] + sol.psi[fit_first + j - 1]));
    den += std::norm(pj);
  }
  sol.fitted_frequency = std::acos(std::clamp(0.5 * num / den, -1.0, 1.0)) / h_fit;
  sol.grid = std::move(grid);
  return sol;
}

}  // namespace lcft::spectrum
