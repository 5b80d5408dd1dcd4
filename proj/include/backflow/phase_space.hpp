#pragma once

#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "backflow/numerics.hpp"
#include "backflow/states.hpp"

namespace backflow {

// Rectangular sampling of a (possibly smoothed, possibly sheared)
// quasiprobability distribution in the rescaled variables (x~, p~).
// values is row-major with x~ as the slow index.
struct PhaseSpaceGrid {
  Interval x_range;
  Interval p_range;
  int nx = 0;
  int np = 0;
  std::vector<double> values;
  double s = 0.0;  // ordering parameter of the sampled distribution

  double x_at(int i) const;
  double p_at(int j) const;
  double& at(int i, int j) { return values[size_t(i) * np + j]; }
  double at(int i, int j) const { return values[size_t(i) * np + j]; }

  void write_csv(std::ostream& os) const;     // header: x_tilde,p_tilde,w
  void write_binary(std::ostream& os) const;  // see read_grid_binary
};

// Binary layout: 32-byte header (bytes 0-7 magic "WGRID001", 8-11 uint32 nx,
// 12-15 uint32 np, 16-31 reserved zero), then x_lo, x_hi, p_lo, p_hi as
// float64, then nx*np float64 values, row-major, little-endian.
PhaseSpaceGrid read_grid_binary(std::istream& is);

struct GridSpec {
  std::optional<Interval> x_range;  // default: [-L, L], L = 8 + 4*pi/delta_t
  std::optional<Interval> p_range;  // default: [p0_t - 6, p0_t + delta_t + 6]
  int nx = 256;
  int np = 256;
  int max_n = 8192;        // negativity refinement ceiling
  double stab_tol = 1e-6;  // successive-refinement agreement for negativity
};

Interval default_x_range(const RescaledParams& params, double kappa = 0.0);
Interval default_p_range(const RescaledParams& params, double kappa = 0.0);

// Closed-form Wigner function of the cat state in rescaled variables:
// two Gaussian peaks at p0_t and p0_t+delta_t plus the midpoint
// interference term, normalized by pi*(1+alpha^2+2 alpha e^{-delta_t^2/2} cos theta).
double wigner_cat(const RescaledParams& params, double x, double p);

// The same distribution convolved with the isotropic Gaussian
// G(x,p,kappa) = exp(-(x^2+p^2)/kappa)/(pi*kappa); kappa = -s >= 0.
// Widths add, the interference amplitude is damped and its fringe
// frequency contracts by 1/(1+kappa/2). kappa = 0 reduces to wigner_cat.
double wigner_cat_smoothed(const RescaledParams& params, double x, double p,
                           double kappa);

// Direction-resolved variant: the x and p factors are convolved with 1D
// Gaussian kernels of widths kappa_x and kappa_p. Equal widths recover the
// isotropic form; kappa_p = 0 leaves the momentum marginal untouched (the
// evolve-then-convolve current needs exactly that combination).
double wigner_cat_smoothed_aniso(const RescaledParams& params, double x,
                                 double p, double kappa_x, double kappa_p);

// Direct quadrature of the Wigner transform of psi_t (physical units):
// (1/2pi) int dy psi_t*(x+y/2) psi_t(x-y/2) e^{ipy}. Real part; the
// imaginary residue (available separately) stays below ~1e-10.
double wigner_numeric(const CatState& state, double x, double p, double t,
                      double abs_tol = 1e-10);
double wigner_numeric_imag(const CatState& state, double x, double p,
                           double t, double abs_tol = 1e-10);

// Free-evolution phase-space shear: (x, p) -> (x + p t/m, p).
std::pair<double, double> shear(double x, double p, double t,
                                double mass = 1.0);

// Wigner function at scaled time t~: constant along the shear flow,
// so it is wigner_cat at the back-sheared point.
double wigner_t(const RescaledParams& params, double x, double p,
                double t_tilde);

PhaseSpaceGrid build_grid(const RescaledParams& params,
                          const GridSpec& spec = {}, double kappa = 0.0,
                          double t_tilde = 0.0);

// Volume of the negative part, Delta = (1/2) int int (|W| - W)
//                                    = int int max(-W, 0).
// Midpoint-rule grid refined x2 until two successive refinements agree to
// spec.stab_tol; starts fine enough to put >= 8 points per fringe period.
double negativity_delta(const RescaledParams& params,
                        const GridSpec& spec = {}, double kappa = 0.0);

// Phase-space wedge swept past x = 0 during (t1, t2): angular bounds
// pi/2 + arctan(t1/m) and pi/2 + arctan(t2/m), unbounded radially.
struct Sector {
  double t1 = 0.0;
  double t2 = 0.0;
};

std::pair<double, double> sector_angles(const Sector& sector,
                                        double mass = 1.0);

// int_Omega W0 dx dp over the wedge between p = -(m/t1) x and
// p = -(m/t2) x; equals flux_F(t1, t2) to ~1e-6 for these states.
double sector_flux(const RescaledParams& params, const Sector& sector);

// (V+, V-): volumes of the positive/negative parts of W0 on the wedge.
// V+ - V- = sector_flux and V- <= Delta.
std::pair<double, double> sector_split_volumes(const RescaledParams& params,
                                               const Sector& sector);

}  // namespace backflow
