#include "lcft/specfun/upsilon.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <sstream>

#include "lcft/errors.hpp"
#include "lcft/specfun/gamma.hpp"

namespace lcft::specfun {
namespace {

using boost::math::quadrature::gauss_kronrod;

constexpr int kMaxDepth = 15;
constexpr int kMaxPanels = 64;

// sinh(u)/u - 1 without cancellation near u = 0.
template <class T>
T sinhc_minus_one(T u) {
  if (std::abs(u) < 0.1) {
    const T u2 = u * u;
    return u2 * (1.0 / 6.0 + u2 * (1.0 / 120.0 + u2 * (1.0 / 5040.0 + u2 / 362880.0)));
  }
  return std::sinh(u) / u - 1.0;
}

}  // namespace

Complex UpsilonLog::value() const { return is_zero ? Complex(0.0) : std::exp(log_value); }

UpsilonEvaluator::UpsilonEvaluator(double gamma, double quad_tolerance, int max_shifts)
    : gamma_(gamma), Q_(background_charge(gamma)), tol_(quad_tolerance), max_shifts_(max_shifts) {
  if (!(gamma > 0.0 && gamma < 2.0)) throw DomainError("Upsilon: gamma must lie in (0, 2)");
  if (!(quad_tolerance >= 1e-14 && quad_tolerance <= 1e-8)) {
    throw DomainError("Upsilon: quad_tolerance must lie in [1e-14, 1e-8]");
  }
  if (max_shifts < 1) throw DomainError("Upsilon: max_shifts must be positive");
}

Complex UpsilonEvaluator::log_strip(Complex z) const {
  if (!(z.real() > 0.0 && z.real() < Q_)) {
    std::ostringstream os;
    os << "log_upsilon_strip: Re z must lie in (0, Q), got z = " << z;
    throw DomainError(os.str());
  }
  const Complex a = 0.5 * Q_ - z;
  const Complex a2 = a * a;
  if (a == Complex(0.0)) return 0.0;

  const double g = gamma_;
  const double halfQ = 0.5 * Q_;
  auto integrand = [&](double t) -> Complex {
    if (t < 1e-12) return -a2;
    if (t <= 1.0) {
      // gamma/4 + 1/gamma = Q/2 lets the exponentials cancel:
      // s = a^2 S(at/2)^2 / (S(gamma t/4) S(t/gamma)), S(u) = sinh(u)/u.
      const Complex ea = sinhc_minus_one(Complex(0.5 * a * t));
      const double ex = sinhc_minus_one(0.25 * g * t);
      const double ey = sinhc_minus_one(t / g);
      const Complex r_minus_one = (2.0 * ea + ea * ea - ex - ey - ex * ey) / ((1.0 + ex) * (1.0 + ey));
      return a2 * (std::expm1(-t) - r_minus_one) / t;
    }
    const Complex num = std::exp((a - halfQ) * t) - 2.0 * std::exp(-halfQ * t) + std::exp(-(a + halfQ) * t);
    const Complex s = num / ((1.0 - std::exp(-0.5 * g * t)) * (1.0 - std::exp(-2.0 * t / g)));
    return (a2 * std::exp(-t) - s) / t;
  };

  const double rate = halfQ - std::abs(a.real());
  const double abs_a2 = std::abs(a2);
  auto tail_bound = [&](double T) {
    const double denom = (1.0 - std::exp(-0.5 * g * T)) * (1.0 - std::exp(-2.0 * T / g));
    return (abs_a2 * std::exp(-T) + 4.0 * std::exp(-rate * T) / (rate * denom)) / T;
  };

  Complex total = 0.0;
  double lo = 0.0;
  double hi = 1.0;
  for (int panel = 0; panel < kMaxPanels; ++panel) {
    double err = 0.0;
    double l1 = 0.0;
    total += gauss_kronrod<double, 15>::integrate(integrand, lo, hi, kMaxDepth, tol_, &err, &l1);
    if (err > 10.0 * tol_ * std::max(1.0, l1)) {
      throw ConvergenceError("log_upsilon_strip: quadrature did not converge on a panel");
    }
    if (tail_bound(hi) < 0.1 * tol_) return total;
    lo = hi;
    hi *= 2.0;
  }
  throw ConvergenceError("log_upsilon_strip: tail did not decay within the panel budget");
}

UpsilonLog UpsilonEvaluator::log_upsilon(Complex z) const {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("upsilon: non-finite argument");
  }
  const double g = gamma_;
  const double small = 0.5 * g;
  const double big = 2.0 / g;
  const double lo = 0.5 * Q_ - 0.25 * g;
  const double hi = 0.5 * Q_ + 0.25 * g;
  const double log_half_gamma = std::log(0.5 * g);

  // Upsilon(z) = exp(acc) * Upsilon(w)
  Complex acc = 0.0;
  Complex w = z;
  int shifts = 0;
  auto count = [&] {
    if (++shifts > max_shifts_) throw ConvergenceError("upsilon: shift budget exceeded");
  };

  while (w.real() < lo) {
    count();
    GammaRatio f;
    Complex log_power;
    double step;
    if (w.real() + big <= hi) {
      f = l_ratio(2.0 * w / g);
      log_power = (4.0 * w / g - 1.0) * log_half_gamma;
      step = big;
    } else {
      f = l_ratio(0.5 * g * w);
      log_power = (1.0 - g * w) * log_half_gamma;
      step = small;
    }
    if (f.kind == LatticeKind::pole) return {true, {}, shifts};
    if (f.kind == LatticeKind::zero) {
      throw PoleError("upsilon: indeterminate shift (zero factor while stepping up)");
    }
    acc -= f.log_value + log_power;
    w += step;
  }
  while (w.real() > hi) {
    count();
    GammaRatio f;
    Complex log_power;
    Complex v;
    if (w.real() - big >= lo) {
      v = w - big;
      f = l_ratio(2.0 * v / g);
      log_power = (4.0 * v / g - 1.0) * log_half_gamma;
    } else {
      v = w - small;
      f = l_ratio(0.5 * g * v);
      log_power = (1.0 - g * v) * log_half_gamma;
    }
    if (f.kind == LatticeKind::zero) return {true, {}, shifts};
    if (f.kind == LatticeKind::pole) {
      throw PoleError("upsilon: indeterminate shift (pole factor while stepping down)");
    }
    acc += f.log_value + log_power;
    w = v;
  }
  return {false, acc + log_strip(w), shifts};
}

double UpsilonEvaluator::prime_at_zero() const {
  return log_upsilon(Complex(0.5 * gamma_, 0.0)).value().real();
}

Complex log_upsilon_strip(Complex z, double gamma) { return UpsilonEvaluator(gamma).log_strip(z); }

Complex upsilon(Complex z, double gamma) { return UpsilonEvaluator(gamma).value(z); }

double upsilon_prime_zero(double gamma) { return UpsilonEvaluator(gamma).prime_at_zero(); }

}  // namespace lcft::specfun
