#include "backflow/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <queue>

namespace backflow {

Tolerances& tolerances() {
  static Tolerances t;
  return t;
}

namespace {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1] (QUADPACK dqk15).
constexpr int kGK = 8;
constexpr double kXgk[kGK] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
constexpr double kWgk[kGK] = {
    0.0229353220105292, 0.0630920926299785, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278};
constexpr double kWg[4] = {0.1294849661688697, 0.2797053914892767,
                           0.3818300505051189, 0.4179591836734694};

struct Panel {
  double a, b;
  double value;
  double error;
  long seq;  // creation order, for deterministic tie-breaks
};

struct PanelWorse {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.seq > y.seq;
  }
};

Panel evaluate_panel(const Fn1D& f, double a, double b, long seq) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  double resk = 0.0, resg = 0.0;
  const double fc = f(c);
  fv[7] = fc;
  resk = kWgk[7] * fc;
  resg = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXgk[i];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    fv[i] = f1;
    fv[14 - i] = f2;
    resk += kWgk[i] * (f1 + f2);
    if (i % 2 == 1) resg += kWg[i / 2] * (f1 + f2);
  }
  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int i = 0; i < 7; ++i)
    resasc += kWgk[i] * (std::abs(fv[i] - reskh) + std::abs(fv[14 - i] - reskh));
  resasc *= h;
  double err = std::abs(resk - resg) * h;
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  return Panel{a, b, resk * h, err, seq};
}

}  // namespace

QuadratureResult integrate_1d(const Fn1D& f, double a, double b,
                              double abs_tol, long max_panels) {
  if (!(a < b)) throw std::invalid_argument("integrate_1d: requires a < b");
  if (!(abs_tol > 0.0)) throw std::invalid_argument("integrate_1d: abs_tol must be > 0");

  long seq = 0;
  long evals = 15;
  std::priority_queue<Panel, std::vector<Panel>, PanelWorse> panels;
  Panel root = evaluate_panel(f, a, b, seq++);
  double total_value = root.value;
  double total_error = root.error;
  panels.push(root);

  while (total_error > abs_tol && seq < max_panels) {
    Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // Interval is at floating-point resolution; nothing left to split.
      panels.push(worst);
      break;
    }
    Panel left = evaluate_panel(f, worst.a, mid, seq++);
    Panel right = evaluate_panel(f, mid, worst.b, seq++);
    evals += 30;
    total_value += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }

  // Recompute the totals by summation over panels; the incremental updates
  // above can accumulate cancellation over many splits.
  if (seq > 1) {
    total_value = 0.0;
    total_error = 0.0;
    while (!panels.empty()) {
      total_value += panels.top().value;
      total_error += panels.top().error;
      panels.pop();
    }
  }

  if (total_error > abs_tol)
    throw NonConvergence("integrate_1d: panel budget exhausted (error " +
                         std::to_string(total_error) + " > tol " +
                         std::to_string(abs_tol) + ")");
  return QuadratureResult{total_value, total_error, evals};
}

QuadratureResult integrate_2d(const Fn2D& f, Interval x_range,
                              Interval p_range, double abs_tol,
                              long max_panels) {
  if (!(x_range.lo < x_range.hi) || !(p_range.lo < p_range.hi))
    throw std::invalid_argument("integrate_2d: empty rectangle");
  if (!(abs_tol > 0.0)) throw std::invalid_argument("integrate_2d: abs_tol must be > 0");

  const double width_x = x_range.width();
  const double inner_tol = 0.5 * abs_tol / width_x;
  long inner_evals = 0;
  const Fn1D outer = [&](double x) {
    QuadratureResult inner = integrate_1d(
        [&](double p) { return f(x, p); }, p_range.lo, p_range.hi, inner_tol,
        max_panels);
    inner_evals += inner.evaluations;
    return inner.value;
  };
  QuadratureResult res = integrate_1d(outer, x_range.lo, x_range.hi,
                                      0.5 * abs_tol, max_panels);
  return QuadratureResult{res.value, res.error_estimate + 0.5 * abs_tol,
                          inner_evals};
}

std::vector<Bracket> find_sign_changes(const Fn1D& f, Interval window,
                                       int n_seed) {
  if (n_seed < 2) throw std::invalid_argument("find_sign_changes: n_seed must be >= 2");
  if (!(window.lo < window.hi))
    throw std::invalid_argument("find_sign_changes: empty window");

  const double h = window.width() / n_seed;
  std::vector<Bracket> brackets;
  // Walk the samples keeping the last strictly-signed one; exact zeros are
  // treated as part of whichever transition they sit on.
  double x_prev = window.lo;
  double f_prev = f(x_prev);
  int sign_prev = (f_prev > 0.0) - (f_prev < 0.0);
  for (int i = 1; i <= n_seed; ++i) {
    const double x = (i == n_seed) ? window.hi : window.lo + i * h;
    const double fx = f(x);
    const int sign = (fx > 0.0) - (fx < 0.0);
    if (sign != 0) {
      if (sign_prev != 0 && sign != sign_prev)
        brackets.push_back(Bracket{x_prev, x});
      x_prev = x;
      f_prev = fx;
      sign_prev = sign;
    }
    // sign == 0: keep the previous signed anchor so the zero falls inside
    // the eventual bracket.
  }
  return brackets;
}

double refine_root(const Fn1D& f, Bracket bracket, double tol) {
  double a = bracket.lo, b = bracket.hi;
  if (!(a < b)) throw InvalidBracket("refine_root: bracket.lo >= bracket.hi");
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0))
    throw InvalidBracket("refine_root: endpoints have the same sign");

  // Brent's method.
  double c = a, fc = fa;
  double d = b - a, e = d;
  const double eps = std::numeric_limits<double>::epsilon();
  for (int iter = 0; iter < 200; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p, q, r;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q),
                             std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = f(b);
  }
  return b;
}

std::pair<double, double> minimize_scalar(const Fn1D& f, double lo, double hi,
                                          double tol) {
  // Brent minimization (golden section with parabolic steps).
  const double gold = 0.3819660112501051;
  const double eps = std::numeric_limits<double>::epsilon();
  double a = lo, b = hi;
  double x = a + gold * (b - a);
  double w = x, v = x;
  double fx = f(x), fw = fx, fv = fx;
  double d = 0.0, e = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double xm = 0.5 * (a + b);
    const double tol1 = tol * std::abs(x) + eps * 10.0 + 0.25 * tol;
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - xm) <= tol2 - 0.5 * (b - a)) break;
    bool golden = true;
    if (std::abs(e) > tol1) {
      const double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double etemp = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * etemp) && p > q * (a - x) &&
          p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = (xm > x) ? tol1 : -tol1;
        golden = false;
      }
    }
    if (golden) {
      e = (x >= xm) ? a - x : b - x;
      d = gold * e;
    }
    const double u = (std::abs(d) >= tol1) ? x + d : x + (d > 0 ? tol1 : -tol1);
    const double fu = f(u);
    if (fu <= fx) {
      if (u >= x) a = x; else b = x;
      v = w; w = x; x = u;
      fv = fw; fw = fx; fx = fu;
    } else {
      if (u < x) a = u; else b = u;
      if (fu <= fw || w == x) {
        v = w; w = u;
        fv = fw; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u;
        fv = fu;
      }
    }
  }
  return {x, fx};
}

}  // namespace backflow
