#pragma once

#include <limits>
#include <vector>

#include "lcft/core/params.hpp"

namespace lcft::spectrum {

/// Solution of -psi''/2 + (Q^2/2 + e^{gamma c}) psi = 2 Delta_{Q+ip} psi
/// decaying at c -> +infinity, with 2 Delta_{Q+ip} = Q^2/2 + p^2/2. Left of
/// the turning point psi ~ A e^{ipc} + B e^{-ipc}; R_mod = B/A.
struct ToyScatteringSolution {
  double p = 0.0;
  double gamma = 0.0;
  std::vector<double> grid;  ///< decreasing from c_max to c_min
  std::vector<Complex> psi;
  std::vector<Complex> psi_prime;
  Complex amplitude_in{};   ///< A
  Complex amplitude_out{};  ///< B
  Complex R_mod{};
  double fitted_frequency = 0.0;  ///< wavenumber recovered from the fit window
  double fit_residual = 0.0;      ///< relative rms residual of the plane-wave fit
  double wronskian_drift = 0.0;   ///< max relative change of W(psi, psi_left)
  double turning_point = 0.0;     ///< c with 2 e^{gamma c} = p^2
  std::size_t steps = 0;
};

struct ToyOptions {
  double c_min = std::numeric_limits<double>::quiet_NaN();  ///< NaN: chosen from tol
  double c_max = std::numeric_limits<double>::quiet_NaN();  ///< NaN: u(c_max) = 40
  double tol = 1e-10;
  double step_factor = 1.0;  ///< multiplies every step (0.5 halves the grid spacing)
  std::size_t max_steps = 2000000;
};

/// Integrates from c_max (seeded by the large-u expansion of K_nu(u),
/// u = (2 sqrt 2/gamma) e^{gamma c/2}, nu = 2ip/gamma) down to c_min with a
/// three-stage Gauss-Legendre collocation method, then fits the plane waves on
/// the leftmost window. Requires p > 0, u(c_max) >= 12 and a fit window deep
/// enough that e^{gamma c} corrections stay below tol (PreconditionError).
/// Throws ConvergenceError when the step budget cannot resolve the turning
/// region.
ToyScatteringSolution toy_solve(double p, double gamma, const ToyOptions& options = {});
ToyScatteringSolution toy_solve(double p, double gamma, double c_min, double c_max, double tol);

/// Gamma(nu)/Gamma(-nu) (sqrt 2/gamma)^{-2 nu}, nu = 2ip/gamma: the ratio of the
/// small-u coefficients of K_nu in the variable c.
Complex toy_reflection_closed_form(double p, double gamma);

/// Continuum edge Q^2/2.
double toy_spectrum_edge(double gamma);

/// Large-u expansion of K_nu(u) and its u-derivative, summed to the smallest term.
struct BesselKValue {
  Complex value;
  Complex derivative;
};
BesselKValue bessel_k_large_u(Complex nu, double u);

}  // namespace lcft::spectrum
