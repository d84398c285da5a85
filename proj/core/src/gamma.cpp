#include "lcft/specfun/gamma.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "lcft/errors.hpp"

namespace lcft::specfun {
namespace {

// B_{2k} / (2k (2k-1)) for k = 1..12.
constexpr std::array<double, 12> kStirling = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
    77683.0 / 5796.0,
    -236364091.0 / 1506960.0,
};

constexpr double kStirlingThreshold = 14.0;

Complex stirling(Complex w) {
  const Complex inv = 1.0 / w;
  const Complex inv2 = inv * inv;
  Complex series = 0.0;
  Complex power = inv;
  for (double c : kStirling) {
    const Complex term = c * power;
    series += term;
    if (std::abs(term) < 1e-18 * std::abs(series)) break;
    power *= inv2;
  }
  return (w - 0.5) * std::log(w) - w + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

}  // namespace

bool near_nonpositive_integer(Complex z) {
  if (z.real() > 0.5) return false;
  const double n = std::round(z.real());
  return std::abs(z - Complex(n, 0.0)) < kLatticeTolerance;
}

Complex log_gamma(Complex z) {
  if (near_nonpositive_integer(z)) {
    std::ostringstream os;
    os << "log_gamma: pole at z = " << z;
    throw PoleError(os.str());
  }
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("log_gamma: non-finite argument");
  }
  // Shift to Re(w) >= threshold. Each log(z+k) is principal and analytic off
  // the negative real axis, so the sum continues the principal branch.
  Complex shift_sum = 0.0;
  Complex w = z;
  if (w.real() < kStirlingThreshold) {
    const int n = static_cast<int>(std::ceil(kStirlingThreshold - w.real()));
    for (int k = 0; k < n; ++k) shift_sum += std::log(z + static_cast<double>(k));
    w = z + static_cast<double>(n);
  }
  return stirling(w) - shift_sum;
}

Complex GammaRatio::value() const {
  switch (kind) {
    case LatticeKind::zero:
      return 0.0;
    case LatticeKind::pole:
      return {std::numeric_limits<double>::infinity(), 0.0};
    case LatticeKind::regular:
      break;
  }
  return std::exp(log_value);
}

GammaRatio l_ratio(Complex z) {
  if (near_nonpositive_integer(z)) return {LatticeKind::pole, {}};
  if (near_nonpositive_integer(1.0 - z)) return {LatticeKind::zero, {}};
  return {LatticeKind::regular, log_gamma(z) - log_gamma(1.0 - z)};
}

}  // namespace lcft::specfun
