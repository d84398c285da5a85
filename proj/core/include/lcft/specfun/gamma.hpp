#pragma once

#include "lcft/core/params.hpp"

namespace lcft::specfun {

/// Distance below which an argument is treated as sitting on a pole or zero
/// lattice point.
inline constexpr double kLatticeTolerance = 1e-12;

/// True when z lies within kLatticeTolerance of a nonpositive integer.
bool near_nonpositive_integer(Complex z);

/// Principal branch of log Gamma(z) (analytic on C minus (-inf, 0]).
/// Throws PoleError at nonpositive integers.
Complex log_gamma(Complex z);

enum class LatticeKind { regular, zero, pole };

/// l(z) = Gamma(z)/Gamma(1-z), carried in log space.
struct GammaRatio {
  LatticeKind kind = LatticeKind::regular;
  Complex log_value{};  ///< meaningful only when kind == regular
  Complex value() const;
};

GammaRatio l_ratio(Complex z);

}  // namespace lcft::specfun
