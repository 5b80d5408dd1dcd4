#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "backflow/errors.hpp"

namespace backflow {

// Global absolute tolerances. The CLI may override them once at startup via
// the BACKFLOW_LAB_TOL environment variable (1D gets the raw value, 2D gets
// 100x of it, preserving the default ratio).
struct Tolerances {
  double quad_1d = 1e-10;
  double quad_2d = 1e-8;
};
Tolerances& tolerances();

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  // absolute
  long evaluations = 0;
};

// Sign-change interval: lo < hi and f(lo)*f(hi) <= 0 for the bracketed f.
struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
};

using Fn1D = std::function<double(double)>;
using Fn2D = std::function<double(double, double)>;

// Adaptive Gauss-Kronrod 7/15 quadrature on [a, b].
// Deterministic: panels are split depth-first in a fixed order.
// Throws NonConvergence when the panel budget runs out with the accumulated
// error estimate still above abs_tol.
QuadratureResult integrate_1d(const Fn1D& f, double a, double b,
                              double abs_tol, long max_panels = 200000);

// Tensorized adaptive quadrature on a rectangle: an outer adaptive pass in x
// of inner adaptive integrals over p. Deterministic for fixed inputs.
QuadratureResult integrate_2d(const Fn2D& f, Interval x_range,
                              Interval p_range, double abs_tol,
                              long max_panels = 200000);

// Scans [window.lo, window.hi] at n_seed+1 equispaced points and returns one
// bracket per detected sign change, in ascending order. Samples that are
// exactly zero are folded into the enclosing bracket.
std::vector<Bracket> find_sign_changes(const Fn1D& f, Interval window,
                                       int n_seed);

// Brent root refinement inside a valid bracket; bisection fallback keeps the
// bracket shrinking, so convergence is guaranteed. tol is the final bracket
// width. Throws InvalidBracket when both endpoints have the same strict sign.
double refine_root(const Fn1D& f, Bracket bracket, double tol = 1e-12);

// Golden-section / parabolic minimum refinement on [lo, hi].
// Returns {argmin, min value}.
std::pair<double, double> minimize_scalar(const Fn1D& f, double lo, double hi,
                                          double tol = 1e-10);

}  // namespace backflow
