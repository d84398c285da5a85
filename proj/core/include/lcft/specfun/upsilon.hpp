#pragma once

#include "lcft/core/params.hpp"

namespace lcft::specfun {

/// Logarithm of an Upsilon value, or an exact zero.
struct UpsilonLog {
  bool is_zero = false;
  Complex log_value{};  ///< defined modulo 2*pi*i; meaningful only when !is_zero
  int shifts = 0;       ///< number of shift relations applied

  Complex value() const;
};

/// Evaluates Upsilon_{gamma/2}. Inside the strip 0 < Re z < Q the defining
/// t-integral is integrated directly; elsewhere the two shift relations
///   Y(z + gamma/2) = l(gamma z/2) (gamma/2)^(1 - gamma z) Y(z)
///   Y(z + 2/gamma) = l(2z/gamma) (gamma/2)^(4z/gamma - 1) Y(z)
/// move the argument into the window |Re z - Q/2| <= gamma/4 first.
class UpsilonEvaluator {
 public:
  explicit UpsilonEvaluator(double gamma, double quad_tolerance = 1e-13, int max_shifts = 100000);

  double gamma() const noexcept { return gamma_; }
  double Q() const noexcept { return Q_; }
  double quad_tolerance() const noexcept { return tol_; }
  int max_shifts() const noexcept { return max_shifts_; }

  /// log Upsilon from the strip integral. Requires 0 < Re z < Q.
  Complex log_strip(Complex z) const;

  UpsilonLog log_upsilon(Complex z) const;
  Complex value(Complex z) const { return log_upsilon(z).value(); }

  /// Upsilon'(0), equal to Upsilon(gamma/2).
  double prime_at_zero() const;

 private:
  double gamma_;
  double Q_;
  double tol_;
  int max_shifts_;
};

Complex log_upsilon_strip(Complex z, double gamma);
Complex upsilon(Complex z, double gamma);
double upsilon_prime_zero(double gamma);

}  // namespace lcft::specfun
