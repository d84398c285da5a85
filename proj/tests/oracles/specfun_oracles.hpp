#pragma once

// Independent reference computations for the special-function tests. None of
// these call into lcft::specfun.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

// Gamma(x) for real x > 0 by direct quadrature of t^(x-1) e^(-t).
inline double gamma_quadrature(double x) {
  auto f = [x](double t) { return std::pow(t, x - 1.0) * std::exp(-t); };
  boost::math::quadrature::tanh_sinh<double> ts;
  boost::math::quadrature::exp_sinh<double> es;
  return ts.integrate(f, 0.0, 1.0) + es.integrate(f, 1.0, std::numeric_limits<double>::infinity());
}

// zeta(s) by Euler-Maclaurin summation with N terms and K Bernoulli
// corrections, valid for complex s away from 1.
inline Complex zeta_euler_maclaurin(Complex s, int N = 12, int K = 8) {
  static const double b2k[] = {1.0 / 6,      -1.0 / 30,   1.0 / 42,       -1.0 / 30,
                               5.0 / 66,     -691.0 / 2730, 7.0 / 6,      -3617.0 / 510,
                               43867.0 / 798, -174611.0 / 330};
  Complex sum = 0.0;
  for (int n = 1; n < N; ++n) sum += std::exp(-s * std::log(double(n)));
  const double lnN = std::log(double(N));
  sum += std::exp((1.0 - s) * lnN) / (s - 1.0) + 0.5 * std::exp(-s * lnN);
  Complex poch = s;  // s (s+1) ... (s+2k-2)
  double fact = 2.0;  // (2k)!
  for (int k = 1; k <= K; ++k) {
    sum += b2k[k - 1] / fact * poch * std::exp((-s - 2.0 * k + 1.0) * lnN);
    poch *= (s + 2.0 * k - 1.0) * (s + 2.0 * k);
    fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
  }
  return sum;
}

// zeta'(-1) by a complex-step derivative of the Euler-Maclaurin sum.
inline double zeta_prime_minus_one() {
  const double h = 1e-30;
  return zeta_euler_maclaurin(Complex(-1.0, h)).imag() / h;
}

// log Upsilon on the strip by Romberg extrapolation of the trapezoid rule on
// [0, T] with the integrand written directly from its sinh form.
inline Complex log_upsilon_trapezoid(Complex z, double gamma, double T = 250.0, int levels = 16) {
  const double Q = 2.0 / gamma + gamma / 2.0;
  const Complex a = Q / 2.0 - z;
  auto f = [&](double t) -> Complex {
    if (t == 0.0) return -a * a;
    const Complex sh = std::sinh(a * t / 2.0);
    return (a * a * std::exp(-t) - sh * sh / (std::sinh(gamma * t / 4.0) * std::sinh(t / gamma))) / t;
  };
  std::vector<std::vector<Complex>> R(levels);
  Complex trap = 0.5 * T * (f(0.0) + f(T));
  R[0].push_back(trap);
  for (int k = 1; k < levels; ++k) {
    const int n = 1 << (k - 1);
    const double h = T / (2.0 * n);
    Complex mid = 0.0;
    for (int i = 0; i < n; ++i) mid += f((2 * i + 1) * h);
    trap = 0.5 * trap + h * mid;
    R[k].push_back(trap);
    double p = 4.0;
    for (int j = 1; j <= k; ++j, p *= 4.0) R[k].push_back(R[k][j - 1] + (R[k][j - 1] - R[k - 1][j - 1]) / (p - 1.0));
  }
  return R[levels - 1][levels - 1];
}

}  // namespace oracle
