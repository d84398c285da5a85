#include "lcft/specfun/dozz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "lcft/errors.hpp"
#include "lcft/specfun/gamma.hpp"

namespace lcft::specfun {
namespace {

bool canonical_less(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

// log of pi mu l(gamma^2/4) (gamma/2)^(2 - gamma^2/2), a positive real.
double log_dozz_base(const LiouvilleParams& p) {
  const double g = p.gamma();
  const GammaRatio l = l_ratio(Complex(0.25 * g * g, 0.0));
  return std::log(std::numbers::pi * p.mu()) + l.log_value.real() +
         (2.0 - 0.5 * g * g) * std::log(0.5 * g);
}

}  // namespace

DozzResult evaluate_dozz(Complex a1, Complex a2, Complex a3, const LiouvilleParams& params,
                         const UpsilonEvaluator& upsilon) {
  if (std::abs(upsilon.gamma() - params.gamma()) > 0.0) {
    throw DomainError("evaluate_dozz: evaluator gamma differs from params");
  }
  std::array<Complex, 3> a{a1, a2, a3};
  std::sort(a.begin(), a.end(), canonical_less);
  const double Q = params.Q();
  const double g = params.gamma();
  const Complex abar = (a[0] + a[1]) + a[2];
  const Complex half = 0.5 * abar;

  DozzResult r;
  r.branch_dependent = a[0].imag() != 0.0 || a[1].imag() != 0.0 || a[2].imag() != 0.0;

  const UpsilonLog den0 = upsilon.log_upsilon(half - Q);
  std::array<UpsilonLog, 3> den;
  for (int i = 0; i < 3; ++i) den[i] = upsilon.log_upsilon(half - a[i]);
  if (den0.is_zero || den[0].is_zero || den[1].is_zero || den[2].is_zero) {
    r.pole = true;
    r.value = {std::numeric_limits<double>::infinity(), 0.0};
    return r;
  }
  std::array<UpsilonLog, 3> num;
  for (int i = 0; i < 3; ++i) num[i] = upsilon.log_upsilon(a[i]);
  if (num[0].is_zero || num[1].is_zero || num[2].is_zero) {
    r.zero = true;
    r.value = 0.0;
    return r;
  }
  const double log_prime = std::log(upsilon.prime_at_zero());
  Complex lv = ((2.0 * Q - abar) / g) * log_dozz_base(params) + log_prime;
  for (int i = 0; i < 3; ++i) lv += num[i].log_value;
  lv -= den0.log_value;
  for (int i = 0; i < 3; ++i) lv -= den[i].log_value;
  r.log_value = lv;
  r.value = std::exp(lv);
  return r;
}

DozzResult evaluate_dozz(Complex a1, Complex a2, Complex a3, const LiouvilleParams& params) {
  return evaluate_dozz(a1, a2, a3, params, UpsilonEvaluator(params.gamma()));
}

Complex dozz(Complex a1, Complex a2, Complex a3, const LiouvilleParams& params) {
  const DozzResult r = evaluate_dozz(a1, a2, a3, params);
  if (r.pole) {
    std::ostringstream os;
    os << "dozz: pole at alphas (" << a1 << ", " << a2 << ", " << a3 << ")";
    throw PoleError(os.str());
  }
  return r.value;
}

double c_zero(const LiouvilleParams& params) {
  const double Q = params.Q();
  return std::sqrt(std::numbers::pi) *
         std::exp(-0.25 + 2.0 * kZetaPrimeMinusOne - Q * Q * (1.0 - 2.0 * std::numbers::ln2));
}

ReflectionResult evaluate_reflection(Complex alpha, const LiouvilleParams& params) {
  const double g = params.gamma();
  const Complex x = params.Q() - alpha;
  const Complex u = 0.5 * g * x;
  const Complex v = 2.0 * x / g;
  ReflectionResult r;
  if (near_nonpositive_integer(-u) || near_nonpositive_integer(-v) || near_nonpositive_integer(u) ||
      near_nonpositive_integer(v)) {
    r.pole = true;
    r.value = {std::numeric_limits<double>::infinity(), 0.0};
    return r;
  }
  const GammaRatio l = l_ratio(Complex(0.25 * g * g, 0.0));
  const double log_base = std::log(std::numbers::pi * params.mu()) + l.log_value.real();
  r.log_abs_value = (2.0 * x / g) * log_base + log_gamma(-u) + log_gamma(-v) - log_gamma(u) -
                    log_gamma(v);
  r.value = -std::exp(r.log_abs_value);
  return r;
}

Complex reflection(Complex alpha, const LiouvilleParams& params) {
  const ReflectionResult r = evaluate_reflection(alpha, params);
  if (r.pole) {
    std::ostringstream os;
    os << "reflection: Gamma pole at alpha = " << alpha;
    throw PoleError(os.str());
  }
  return r.value;
}

Complex three_point_geometric_factor(const std::array<VertexInsertion, 3>& ins, double Q) {
  std::array<Complex, 3> d;
  for (int i = 0; i < 3; ++i) d[i] = ins[i].delta(Q);
  Complex log_factor = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const int k = 3 - i - j;
      const double dist = chordal_distance(ins[i].position, ins[j].position);
      if (!(dist > 0.0)) throw DomainError("three_point_exact: coincident insertion points");
      log_factor += 2.0 * (d[k] - d[i] - d[j]) * std::log(dist);
    }
  }
  return std::exp(log_factor);
}

Complex three_point_exact(const std::array<VertexInsertion, 3>& ins, const LiouvilleParams& params) {
  const Complex geometric = three_point_geometric_factor(ins, params.Q());
  return 0.5 * c_zero(params) * geometric *
         dozz(ins[0].alpha, ins[1].alpha, ins[2].alpha, params);
}

}  // namespace lcft::specfun
