#pragma once

#include <optional>
#include <string>

#include "backflow/numerics.hpp"
#include "backflow/phase_space.hpp"
#include "backflow/states.hpp"

namespace backflow {

// Ordering parameter of the quasiprobability family; the study domain is
// s in [-1, 0] (Wigner function at s = 0, Husimi Q at s = -1). The kernel
// width is kappa = -s.
struct SmoothingSpec {
  double s = 0.0;
  bool clamped = false;  // set when a thermal mapping fell below s = -1

  double kappa() const { return -s; }

  static SmoothingSpec from_s(double s);
  // Maps the raw thermal value and clamps it into the study domain,
  // flagging the clamp.
  static SmoothingSpec from_thermal_s(double raw_s);
};

// Thermal interaction: damping rate gamma, mean occupation nbar, time t.
struct ThermalChannel {
  double gamma = 0.0;
  double nbar = 0.0;
  double t = 0.0;
};

// s_tau = -2 (2 nbar + 1) (e^{2 tau} - 1), tau = gamma t. May fall below
// -1; callers clamp to the study domain and record the clamp.
double thermal_to_s(const ThermalChannel& channel);

// Normalized isotropic phase-space Gaussian, unit total mass.
double gaussian_kernel(double x, double p, double kappa);

// Closed-form Gaussian smoothing of the cat Wigner function at (x~, p~).
double smooth_wigner(const RescaledParams& params, double x, double p,
                     const SmoothingSpec& spec);

// Which side of the free evolution the convolution is applied to. The
// convolve-then-evolve ordering is the physical one (noise acts on the
// initial state); the alternative gives slightly different numbers with
// the same qualitative behavior.
enum class SmoothingOrder {
  kConvolveThenEvolve,
  kEvolveThenConvolve,
};

// s-dependent current j(t~, s) = int dp~ p~ W_t(0, p~, s), with
// W_t(x,p,s) = W_0(x - p t~, p, s). The momentum integral of each
// Gaussian(-times-cosine) term is done in closed form.
double s_current(const RescaledParams& params, double t_tilde,
                 const SmoothingSpec& spec,
                 SmoothingOrder order = SmoothingOrder::kConvolveThenEvolve);

// Same integral by adaptive quadrature of the smoothed Wigner function;
// test oracle for the closed form above.
double s_current_quadrature(const RescaledParams& params, double t_tilde,
                            const SmoothingSpec& spec,
                            SmoothingOrder order =
                                SmoothingOrder::kConvolveThenEvolve);

// Backflow of the s-dependent current: the same global running-max search
// as compute_beta, driven by cumulative fluxes of j(., s) and refined on
// its zeros. s = 0 agrees with compute_beta to ~1e-8.
double s_beta(const RescaledParams& params, const SmoothingSpec& spec,
              std::optional<Interval> window_tilde = {},
              SmoothingOrder order = SmoothingOrder::kConvolveThenEvolve);

struct NegativeCurrentDepth {
  double s_m = 0.0;               // in [0, 1]
  bool no_backflow_at_zero = false;

  std::string to_json() const;  // {"s_m":..., "no_backflow_at_zero":...}
};

// Smallest smoothing magnitude -s at which the s-dependent backflow
// vanishes, located by bisection on s in [-1, 0] against the predicate
// s_beta(s) > 1e-12. States with no backflow at s = 0 report s_m = 0 with
// the flag set.
NegativeCurrentDepth negative_current_depth(const RescaledParams& params,
                                            double tol_s = 1e-4,
                                            std::optional<Interval>
                                                window_tilde = {});

// Negativity volume of the smoothed distribution.
double smoothed_negativity_delta(const RescaledParams& params,
                                 const SmoothingSpec& spec,
                                 const GridSpec& grid = {});

}  // namespace backflow
