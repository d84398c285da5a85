#pragma once

#include <array>

#include "lcft/core/params.hpp"
#include "lcft/specfun/upsilon.hpp"

namespace lcft::specfun {

/// zeta_R'(-1), the derivative of the Riemann zeta function at -1.
inline constexpr double kZetaPrimeMinusOne = -0.16542114370045092921;

struct DozzResult {
  Complex value{};
  Complex log_value{};  ///< valid when !pole && !zero
  bool pole = false;    ///< a denominator Upsilon sits on its zero lattice
  bool zero = false;    ///< a numerator Upsilon sits on its zero lattice
  bool branch_dependent = false;  ///< complex total weight: principal-branch power used
};

/// DOZZ structure constant with pole/zero flags. Arguments are put in a
/// canonical order first, so permutations give bit-identical results.
DozzResult evaluate_dozz(Complex a1, Complex a2, Complex a3, const LiouvilleParams& params,
                         const UpsilonEvaluator& upsilon);
DozzResult evaluate_dozz(Complex a1, Complex a2, Complex a3, const LiouvilleParams& params);

/// Value of the DOZZ constant; throws PoleError on a pole.
Complex dozz(Complex a1, Complex a2, Complex a3, const LiouvilleParams& params);

/// Universal constant C0 = sqrt(pi) exp(-1/4 + 2 zeta'(-1) - Q^2 (1 - 2 log 2)).
double c_zero(const LiouvilleParams& params);

/// Reflection coefficient R(alpha) computed in log space.
struct ReflectionResult {
  Complex value{};
  Complex log_abs_value{};  ///< log of -R, i.e. R = -exp(log_abs_value)
  bool pole = false;
};

ReflectionResult evaluate_reflection(Complex alpha, const LiouvilleParams& params);
/// Throws PoleError at Gamma poles.
Complex reflection(Complex alpha, const LiouvilleParams& params);

/// Full three-point function on the round sphere:
///   (1/2) C0 prod_{i<j} d(z_i, z_j)^(2(D_k - D_i - D_j)) C(a1, a2, a3),
/// d the chordal distance. This equals the plane power laws times the metric
/// factors g(z_i)^(-D_i), with the limit convention at infinity.
/// Throws DomainError for coincident points and PoleError at DOZZ poles.
Complex three_point_exact(const std::array<VertexInsertion, 3>& insertions,
                          const LiouvilleParams& params);

/// Product of the chordal power laws alone (without C0/2 and DOZZ).
Complex three_point_geometric_factor(const std::array<VertexInsertion, 3>& insertions, double Q);

}  // namespace lcft::specfun
