#include "backflow/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "backflow/beta.hpp"
#include "backflow/detail/dip_search.hpp"
#include "backflow/detail/smoothed_cat.hpp"
#include "backflow/dynamics.hpp"
#include "backflow/format.hpp"

namespace backflow {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kAlivePredicate = 1e-12;  // s_beta above this means backflow
}  // namespace

SmoothingSpec SmoothingSpec::from_s(double s) {
  if (!(s >= -1.0 && s <= 0.0))
    throw std::invalid_argument("SmoothingSpec: s must lie in [-1, 0]");
  return SmoothingSpec{s, false};
}

SmoothingSpec SmoothingSpec::from_thermal_s(double raw_s) {
  if (raw_s < -1.0) return SmoothingSpec{-1.0, true};
  if (raw_s > 0.0) return SmoothingSpec{0.0, true};
  return SmoothingSpec{raw_s, false};
}

double thermal_to_s(const ThermalChannel& channel) {
  if (!(channel.gamma > 0.0) || !(channel.nbar >= 0.0) || !(channel.t >= 0.0))
    throw std::invalid_argument("thermal_to_s: invalid channel");
  const double tau = channel.gamma * channel.t;
  return -2.0 * (2.0 * channel.nbar + 1.0) * (std::exp(2.0 * tau) - 1.0);
}

double gaussian_kernel(double x, double p, double kappa) {
  if (!(kappa > 0.0))
    throw std::invalid_argument("gaussian_kernel: kappa must be > 0");
  return std::exp(-(x * x + p * p) / kappa) / (kPi * kappa);
}

double smooth_wigner(const RescaledParams& params, double x, double p,
                     const SmoothingSpec& spec) {
  return wigner_cat_smoothed(params, x, p, spec.kappa());
}

namespace {

detail::SmoothedCatTerms terms_for_order(const RescaledParams& params,
                                         double kappa, SmoothingOrder order) {
  // The first moment over p of the momentum kernel integrates out, so the
  // evolve-then-convolve current only sees the x-direction smoothing.
  const double kappa_p =
      order == SmoothingOrder::kConvolveThenEvolve ? kappa : 0.0;
  return detail::make_smoothed_terms(params, kappa, kappa_p);
}

// int dp p e^{-A p^2 + B p} = sqrt(pi/A) * B/(2A) * e^{B^2/(4A)}, with a
// complex B carrying the fringe oscillation of the interference term.
std::complex<double> first_moment(double A, std::complex<double> B) {
  return std::sqrt(kPi / A) * B / (2.0 * A) * std::exp(B * B / (4.0 * A));
}

}  // namespace

double s_current(const RescaledParams& params, double t_tilde,
                 const SmoothingSpec& spec, SmoothingOrder order) {
  const detail::SmoothedCatTerms t =
      terms_for_order(params, spec.kappa(), order);
  const double A = t.inv_xvar * t_tilde * t_tilde + t.inv_pvar;

  const auto plain = [&](double center) {
    return (first_moment(A, 2.0 * t.inv_pvar * center) *
            std::exp(-t.inv_pvar * center * center))
        .real();
  };
  // cos(freq*(-p t) - theta) = Re[e^{-i theta} e^{-i freq t p}]
  const std::complex<double> b_mid(2.0 * t.inv_pvar * t.p_mid,
                                   -t.fringe_freq * t_tilde);
  const double mid =
      (std::polar(1.0, -t.theta) * first_moment(A, b_mid)).real() *
      std::exp(-t.inv_pvar * t.p_mid * t.p_mid);

  return t.pref *
         (plain(t.p_upper) + t.alpha2 * plain(t.p_lower) + t.fringe_amp * mid);
}

double s_current_quadrature(const RescaledParams& params, double t_tilde,
                            const SmoothingSpec& spec, SmoothingOrder order) {
  const detail::SmoothedCatTerms t =
      terms_for_order(params, spec.kappa(), order);
  const double lo = std::min(params.p0_t, 0.0) - 9.0;
  const double hi = params.p0_t + params.delta_t + 9.0;
  const QuadratureResult res = integrate_1d(
      [&](double p) {
        return p * detail::eval_smoothed_cat(t, -p * t_tilde, p);
      },
      lo, hi, tolerances().quad_1d);
  return res.value;
}

double s_beta(const RescaledParams& params, const SmoothingSpec& spec,
              std::optional<Interval> window_tilde, SmoothingOrder order) {
  validate(params);
  // The search window comes from the unsmoothed current: smoothing does not
  // move the backflow lobes, while the smeared momentum tail produces slow
  // classical leakage at large |t~| that a window grown on the smoothed
  // current would chase indefinitely.
  Interval window =
      window_tilde ? *window_tilde : default_trace_window(params);
  const auto current = [&](double t) {
    return s_current(params, t, spec, order);
  };

  for (int attempt = 0;; ++attempt) {
    const int n =
        detail::beat_sample_count(params.p0_t, params.delta_t, window.width());
    const double h = window.width() / (n - 1);
    std::vector<double> times(n), flux(n), cur(n);
    for (int i = 0; i < n; ++i) {
      times[i] = (i == n - 1) ? window.hi : window.lo + i * h;
      cur[i] = current(times[i]);
    }
    flux[0] = 0.0;
    for (int i = 1; i < n; ++i)
      flux[i] = flux[i - 1] +
                integrate_1d(current, times[i - 1], times[i], 1e-13, 64).value;

    const detail::DipCore core = detail::dip_search(times, flux, cur, current);
    if (core.drop > -1e-12) return std::max(0.0, -core.drop);

    const bool clipped = core.boundary || core.t1 <= window.lo + h ||
                         core.t2 >= window.hi - h || !(core.t1 < core.t2);
    if (!clipped) {
      const double drop =
          integrate_1d(current, core.t1, core.t2, 1e-13).value;
      return std::max(0.0, -drop);
    }

    if (attempt >= 1)
      throw WindowTooSmall(
          "s_beta: achieving interval touches the window boundary after "
          "expansion");
    const double center = 0.5 * (window.lo + window.hi);
    const double half = window.width();
    window = Interval{center - half, center + half};
  }
}

NegativeCurrentDepth negative_current_depth(const RescaledParams& params,
                                            double tol_s,
                                            std::optional<Interval>
                                                window_tilde) {
  if (!(tol_s > 0.0))
    throw std::invalid_argument("negative_current_depth: tol_s must be > 0");
  const Interval window =
      window_tilde ? *window_tilde : default_trace_window(params);
  const auto alive = [&](double s) {
    return s_beta(params, SmoothingSpec{s, false}, window) > kAlivePredicate;
  };
  if (!alive(0.0)) return NegativeCurrentDepth{0.0, true};
  if (alive(-1.0)) return NegativeCurrentDepth{1.0, false};
  double dead = -1.0, live = 0.0;
  while (live - dead > tol_s) {
    const double mid = 0.5 * (dead + live);
    (alive(mid) ? live : dead) = mid;
  }
  return NegativeCurrentDepth{-0.5 * (dead + live), false};
}

double smoothed_negativity_delta(const RescaledParams& params,
                                 const SmoothingSpec& spec,
                                 const GridSpec& grid) {
  return negativity_delta(params, grid, spec.kappa());
}

std::string NegativeCurrentDepth::to_json() const {
  return std::string("{\"s_m\":") + fmt_double(s_m) +
         ",\"no_backflow_at_zero\":" +
         (no_backflow_at_zero ? "true" : "false") + "}";
}

}  // namespace backflow
