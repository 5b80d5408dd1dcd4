#pragma once

#include <cmath>
#include <stdexcept>

#include "backflow/states.hpp"

namespace backflow::detail {

// Constants of the (possibly direction-resolved) Gaussian-smoothed cat
// Wigner function, hoisted out of grid fills and momentum integrals:
//   W(x,p) = pref * e^{-x^2*inv_xvar} * [ e^{-(p-Pu)^2*inv_pvar}
//            + alpha^2 e^{-(p-Pl)^2*inv_pvar}
//            + fringe_amp cos(x*fringe_freq - theta) e^{-(p-Pm)^2*inv_pvar} ]
struct SmoothedCatTerms {
  double pref;
  double inv_xvar;
  double inv_pvar;
  double fringe_freq;
  double fringe_amp;
  double alpha2;
  double theta;
  double p_lower, p_upper, p_mid;
};

inline SmoothedCatTerms make_smoothed_terms(const RescaledParams& r,
                                            double kappa_x, double kappa_p) {
  if (!(kappa_x >= 0.0) || !(kappa_p >= 0.0))
    throw std::invalid_argument("smoothing width must be >= 0");
  constexpr double kPi = 3.14159265358979323846;
  const double denom = normalization_denominator(r);
  SmoothedCatTerms t;
  t.pref = 1.0 / (kPi * denom *
                  std::sqrt((1.0 + 0.5 * kappa_x) * (1.0 + 2.0 * kappa_p)));
  t.inv_xvar = 1.0 / (2.0 + kappa_x);
  t.inv_pvar = 2.0 / (1.0 + 2.0 * kappa_p);
  t.fringe_freq = r.delta_t / (1.0 + 0.5 * kappa_x);
  t.fringe_amp = 2.0 * r.alpha *
                 std::exp(-r.delta_t * r.delta_t * kappa_x /
                          (2.0 * (2.0 + kappa_x)));
  t.alpha2 = r.alpha * r.alpha;
  t.theta = r.theta;
  t.p_lower = r.p0_t;
  t.p_upper = r.p0_t + r.delta_t;
  t.p_mid = r.p0_t + 0.5 * r.delta_t;
  return t;
}

inline double eval_smoothed_cat(const SmoothedCatTerms& t, double x,
                                double p) {
  const double du = p - t.p_upper;
  const double dl = p - t.p_lower;
  const double dm = p - t.p_mid;
  const double ex = std::exp(-x * x * t.inv_xvar);
  const double gu = std::exp(-du * du * t.inv_pvar);
  const double gl = std::exp(-dl * dl * t.inv_pvar);
  const double gm = std::exp(-dm * dm * t.inv_pvar);
  return t.pref * ex *
         (gu + t.alpha2 * gl +
          t.fringe_amp * std::cos(x * t.fringe_freq - t.theta) * gm);
}

}  // namespace backflow::detail
