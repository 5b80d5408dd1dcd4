#pragma once

#include <complex>

#include "backflow/errors.hpp"

namespace backflow {

using Complex = std::complex<double>;

// Dimensionless parameters of the two-Gaussian superposition:
//   p0_t = sigma*p0, delta_t = sigma*delta.
// Backflow and Wigner negativity depend on the state only through these.
struct RescaledParams {
  double p0_t = 3.0;
  double delta_t = 0.0;
  double alpha = 0.0;
  double theta = 0.0;
};

// Superposition of two Gaussian momentum wave packets of common width
// parameter sigma, centered at p0 and p0+delta, with relative amplitude
// alpha and relative phase theta (natural units, hbar = 1):
//   phi0(p) = N * [ exp(-(p-p0-delta)^2 sigma^2)
//                   + alpha e^{i theta} exp(-(p-p0)^2 sigma^2) ].
struct CatState {
  double sigma = 1.0;
  double p0 = 3.0;
  double delta = 0.0;
  double alpha = 0.0;
  double theta = 0.0;
  double mass = 1.0;  // fixed to 1 in natural units

  RescaledParams rescaled() const {
    return RescaledParams{sigma * p0, sigma * delta, alpha, theta};
  }
};

// Throws std::invalid_argument on out-of-range parameters.
void validate(const CatState& state);
void validate(const RescaledParams& params);

CatState make_cat_state(const RescaledParams& params, double sigma = 1.0);

// Interference weight 1 + alpha^2 + 2 e^{-delta_t^2/2} alpha cos(theta).
// Throws DegenerateState when it falls below the degeneracy threshold
// (fully destructive superposition, e.g. alpha=1, delta=0, theta=pi).
double normalization_denominator(const RescaledParams& params);

// N(sigma, p0, delta, alpha, theta) = (2 sigma^2/pi)^{1/4} / sqrt(denominator)
double normalization_constant(const CatState& state);

// Initial momentum wave function phi0(p).
Complex phi0(const CatState& state, double p);

// Initial position wave function: analytic Gaussian Fourier transform of
// phi0 with the symmetric (2*pi)^{-1/2} convention.
Complex psi0(const CatState& state, double x);

// integral_{-inf}^{0} |phi0(p)|^2 dp, via the erfc closed form.
double negative_momentum_mass(const CatState& state);

// <p^2>/(2m) from the analytic second moment of |phi0|^2.
double mean_energy(const CatState& state);

// The sigma for which the reconstructed state has mean energy E.
// Mean energy scales exactly as sigma^{-2} at fixed rescaled parameters.
// Throws Unattainable when E <= 0.
double sigma_for_energy(const RescaledParams& params, double energy);

}  // namespace backflow
