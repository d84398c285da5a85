#pragma once

#include <array>
#include <vector>

#include "lcft/core/params.hpp"
#include "lcft/virasoro/verma.hpp"

namespace lcft::virasoro {

struct KacWeight {
  Complex alpha;  ///< Q - r gamma/2 - 2s/gamma
  Complex delta;
};

/// Kac-table weight alpha_{r,s}; requires r, s >= 1.
KacWeight kac_weight(int r, int s, const LiouvilleParams& params);

struct KacResidual {
  int r;
  int s;
  /// |det G| divided by the product of the row norms of G (Hadamard bound).
  double residual;
};

/// Gram determinants at every Kac weight with r s <= level, at c = c_L.
/// Requires 1 <= level <= 8.
std::vector<KacResidual> kac_determinant_zero_check(int level, const LiouvilleParams& params);

/// Relative determinant |det G| / prod_i ||row_i|| of the complex Gram matrix.
double relative_gram_determinant(int level, Complex delta, Complex c);

inline constexpr int kMaxBlockLevel = 10;
inline constexpr double kDegenerateCondition = 1e12;

/// Coefficients of the four-point block in the (0, z, 1, infinity) frame,
/// F(z) = z^(Delta - Delta1 - Delta2) sum_N coefficients[N] z^N.
struct BlockSeries {
  std::array<Complex, 4> external{};
  Complex internal{};
  Complex c{};
  std::vector<Complex> coefficients;
  /// Largest condition number of the diagonally scaled Gram matrices.
  double max_condition = 1.0;
};

/// level-N coefficient: sum over |nu| = |nu'| = N of
/// rho(D1, D2; nu) G^{-1}(nu, nu') rho(D4, D3; nu'), rho from ward_element.
/// Throws DegenerateWeightError when a scaled Gram matrix has condition
/// above 1e12; requires 0 <= n_max <= 10.
BlockSeries block_coefficients(const std::array<Complex, 4>& external, Complex internal, Complex c,
                               int n_max);

/// Same series in exact rational arithmetic; throws PoleError when a Gram
/// matrix is exactly singular.
std::vector<Rational> block_coefficients_exact(const std::array<Rational, 4>& external,
                                               const Rational& internal, const Rational& c,
                                               int n_max);

struct BlockValue {
  Complex value;          ///< z^(Delta - Delta1 - Delta2) times the truncated series
  Complex series_sum;     ///< truncated series alone
  double truncation = 0;  ///< |last term| / |series_sum|
  BlockSeries series;
};

/// Internal weight of the spectrum line, Delta_{Q+ip} = (Q^2 + p^2)/4.
double spectrum_weight(double p, double Q);

/// Block with external weights Delta_{alpha_i} and internal weight
/// Delta_{Q+ip}, c = c_L; requires |z| < 1 and n_max <= 10.
BlockValue four_point_block(Complex z, double p, const std::array<Complex, 4>& alphas,
                            const LiouvilleParams& params, int n_max);

/// Evaluates a precomputed series at z (principal branch for the prefactor).
BlockValue evaluate_block(const BlockSeries& series, Complex z);

}  // namespace lcft::virasoro
