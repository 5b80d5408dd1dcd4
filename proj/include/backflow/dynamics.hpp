#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "backflow/numerics.hpp"
#include "backflow/states.hpp"

namespace backflow {

// Which formula evaluates the probability current at the origin.
enum class CurrentRoute {
  kWaveFunction,  // (i/2m) (psi dpsi*/dx - psi* dpsi/dx) at x = 0
  kWignerFlow,    // int dp (p/m) W(0, p; t)
};

// Sampled j~(t~) with sign-change annotations.
struct CurrentTrace {
  std::vector<double> times;   // t~ samples, ascending
  std::vector<double> values;  // j~ values
  std::vector<Bracket> zero_brackets;

  void write_csv(std::ostream& os) const;  // header: t_tilde,j_tilde
};

// Probability gained on (t1, t2): flux = P(t2) - P(t1).  Times in t~ units.
struct FluxInterval {
  double t1 = 0.0;
  double t2 = 0.0;
  double flux = 0.0;

  std::string to_json() const;  // {"t1":..., "t2":..., "flux":...}
};

// Momentum wave function under free evolution: phi0(p) e^{-i p^2 t/(2m)}.
Complex phi_t(const CatState& state, double p, double t);

// Position wave function at time t (closed Gaussian form) and its spatial
// derivative. Physical units.
Complex psi_t(const CatState& state, double x, double t);
Complex dpsi_dx_t(const CatState& state, double x, double t);

// P(t) = int_0^inf |psi_t(x)|^2 dx, by adaptive quadrature with the
// integrand truncated 12 packet widths past the rightmost packet center.
double probability_P(const CatState& state, double t, double abs_tol = 1e-11);

// Probability current at the origin. The two routes agree to ~1e-8 and the
// Wigner route is kept as an independent cross-check.
double current_j(const CatState& state, double t,
                 CurrentRoute route = CurrentRoute::kWaveFunction);

// Dimensionless current j~(t~) = sigma^2 j(sigma^2 t~).
double current_j_scaled(const CatState& state, double t_tilde,
                        CurrentRoute route = CurrentRoute::kWaveFunction);

// P evaluated at scaled time t~ (P itself is already dimensionless).
double probability_P_scaled(const CatState& state, double t_tilde,
                            double abs_tol = 1e-11);

// F(t1, t2) = P(t2) - P(t1), with times given in t~ units.
FluxInterval flux_F(const CatState& state, double t1_tilde, double t2_tilde);

// Dense j~ sampling over a t~ window with sign-change brackets attached.
CurrentTrace current_trace(const CatState& state, Interval window_tilde,
                           int n_samples);

// Default t~ window for traces and backflow searches: [-T, T] with
// T = max(1, 20/(delta_t*p0_t + 1)), grown until the current amplitude at
// both edges falls below 1e-6 of the trace maximum.
Interval default_trace_window(const RescaledParams& params);

}  // namespace backflow
