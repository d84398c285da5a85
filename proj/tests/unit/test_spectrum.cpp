#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lcft/errors.hpp"
#include "lcft/spectrum/toy.hpp"

using namespace lcft;
using namespace lcft::spectrum;

TEST(ToySpectrum, Edge) {
  EXPECT_NEAR(toy_spectrum_edge(1.0), 3.125, 1e-14);
  const double Q = 2.5;
  const double p = 2.0;
  EXPECT_NEAR(2.0 * (Q * Q + p * p) / 4.0 - toy_spectrum_edge(1.0), 2.0, 1e-14);
  double prev = toy_spectrum_edge(0.05);
  for (double g = 0.1; g < 1.99; g += 0.05) {
    const double e = toy_spectrum_edge(g);
    EXPECT_LT(e, prev);
    prev = e;
  }
  EXPECT_THROW(toy_spectrum_edge(2.5), DomainError);
}

TEST(BesselK, LargeArgumentSeries) {
  // K_{1/2} is elementary; other real orders against libstdc++. The series is
  // asymptotic, so its best truncation is only good to about e^{-2u}.
  for (double u : {12.0, 20.0, 40.0}) {
    const double tol = std::max(1e-13, 10.0 * std::exp(-2.0 * u));
    const BesselKValue k = bessel_k_large_u(0.5, u);
    const double ref = std::sqrt(std::numbers::pi / (2.0 * u)) * std::exp(-u);
    EXPECT_NEAR(k.value.real() / ref, 1.0, 1e-14);
    EXPECT_NEAR(k.derivative.real() / ref, -(1.0 + 0.5 / u), 1e-14);
    for (double nu : {0.0, 1.3, 3.0}) {
      const BesselKValue b = bessel_k_large_u(nu, u);
      EXPECT_NEAR(b.value.real() / std::cyl_bessel_k(nu, u), 1.0, tol) << nu << " " << u;
      const double dk = -0.5 * (std::cyl_bessel_k(std::abs(nu - 1.0), u) + std::cyl_bessel_k(nu + 1.0, u));
      EXPECT_NEAR(b.derivative.real() / dk, 1.0, tol) << nu << " " << u;
    }
  }
  // Imaginary order keeps K real on the real axis.
  EXPECT_NEAR(bessel_k_large_u(Complex(0.0, 3.0), 25.0).value.imag(), 0.0, 1e-30);
}

TEST(ToySolve, FrequencyIsP) {
  const ToyScatteringSolution s = toy_solve(1.0, 1.0);
  EXPECT_NEAR(s.fitted_frequency, 1.0, 1e-6);
  EXPECT_LT(s.fit_residual, 1e-8);
}

TEST(ToySolve, UnitModulusAndWronskian) {
  for (auto [p, g] : {std::pair{0.5, 1.0}, {1.0, 1.0}, {2.0, 1.3}}) {
    const ToyScatteringSolution s = toy_solve(p, g);
    EXPECT_NEAR(std::abs(s.R_mod), 1.0, 1e-8) << p << " " << g;
    EXPECT_LT(s.wronskian_drift, 1e-9) << p << " " << g;
  }
}

TEST(ToySolve, GridHalving) {
  for (auto [p, g] : {std::pair{0.5, 1.0}, {1.0, 1.0}, {2.0, 1.3}}) {
    ToyOptions o;
    const Complex r1 = toy_solve(p, g, o).R_mod;
    o.step_factor = 0.5;
    const Complex r2 = toy_solve(p, g, o).R_mod;
    EXPECT_LT(std::abs(r1 - r2), 1e-7) << p << " " << g;
  }
}

TEST(ToySolve, ClosedFormAgreesWithIntegration) {
  for (auto [p, g] : {std::pair{0.5, 1.0}, {1.0, 1.0}, {2.0, 1.3}, {4.0, 0.7}, {0.1, 1.9}}) {
    const ToyScatteringSolution s = toy_solve(p, g);
    EXPECT_LT(std::abs(s.R_mod - toy_reflection_closed_form(p, g)), 1e-6) << p << " " << g;
  }
}

TEST(ToySolve, AmplitudesMatchSmallArgumentExpansion) {
  // psi is K_nu itself, so |A| = |B| = |Gamma(iy)| / 2 with y = 2p/gamma and
  // |Gamma(iy)|^2 = pi / (y sinh(pi y)).
  const double p = 1.0, g = 1.0;
  const double y = 2.0 * p / g;
  const ToyScatteringSolution s = toy_solve(p, g);
  const double mod_gamma_nu = std::sqrt(std::numbers::pi / (y * std::sinh(std::numbers::pi * y)));
  EXPECT_NEAR(std::abs(s.amplitude_in), 0.5 * mod_gamma_nu, 1e-9 * mod_gamma_nu);
  EXPECT_NEAR(std::abs(s.amplitude_out), 0.5 * mod_gamma_nu, 1e-9 * mod_gamma_nu);
}

TEST(ToySolve, EnvelopeDecaysPastTurningPoint) {
  const ToyScatteringSolution s = toy_solve(1.5, 1.2);
  double prev = 0.0;
  bool started = false;
  for (std::size_t k = s.grid.size(); k-- > 0;) {
    if (s.grid[k] <= s.turning_point) continue;
    const double v = std::abs(s.psi[k]);
    if (started) {
      EXPECT_LE(v, prev * (1.0 + 1e-12)) << s.grid[k];
    }
    prev = v;
    started = true;
  }
  EXPECT_TRUE(started);
}

TEST(ToySolve, PhaseIsContinuousInP) {
  double prev_phase = std::arg(toy_solve(0.2, 1.0).R_mod);
  double max_jump = 0.0;
  for (double p = 0.21; p <= 3.0 + 1e-9; p += 0.01) {
    const double phase = std::arg(toy_solve(p, 1.0).R_mod);
    double d = phase - prev_phase;
    d -= 2.0 * std::numbers::pi * std::round(d / (2.0 * std::numbers::pi));
    max_jump = std::max(max_jump, std::abs(d));
    prev_phase = phase;
  }
  EXPECT_LT(max_jump, 0.5);
}

TEST(ToySolve, Preconditions) {
  EXPECT_THROW(toy_solve(0.0, 1.0), DomainError);
  EXPECT_THROW(toy_solve(1.0, 2.0), DomainError);
  EXPECT_THROW(toy_solve(1.0, 1.0, -60.0, 0.0, 1e-10), PreconditionError);   // seed too close
  EXPECT_THROW(toy_solve(1.0, 1.0, -10.0, 8.0, 1e-10), PreconditionError);   // fit window not free
  ToyOptions coarse;
  coarse.tol = 1e-3;
  coarse.step_factor = 8.0;
  EXPECT_THROW(toy_solve(1.0, 1.0, coarse), ConvergenceError);
  ToyOptions tiny;
  tiny.max_steps = 100;
  EXPECT_THROW(toy_solve(1.0, 1.0, tiny), ConvergenceError);
}
