#include "backflow/filtered_current.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "backflow/detail/dip_search.hpp"
#include "backflow/dynamics.hpp"
#include "backflow/format.hpp"
#include "backflow/parallel.hpp"
#include "backflow/phase_space.hpp"

namespace backflow {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void validate(const DetectorBand& band) {
  if (!(band.p1 > 0.0) || !(band.p2 > 0.0))
    throw std::invalid_argument("detector band: p1, p2 must be > 0");
  if (band.p1 == band.p2)
    throw std::invalid_argument("detector band: p1 must differ from p2");
}

double detector_kernel(double x, const DetectorBand& band) {
  const double scale = std::max(std::abs(band.p1), std::abs(band.p2));
  if (std::abs(x) * scale < 1e-4) {
    // sin(px)/(pi x) = p/pi * (1 - (px)^2/6 + ...)
    const double a1 = band.p1 * x, a2 = band.p2 * x;
    return (band.p1 * (1.0 - a1 * a1 / 6.0) -
            band.p2 * (1.0 - a2 * a2 / 6.0)) /
           kPi;
  }
  return (std::sin(band.p1 * x) - std::sin(band.p2 * x)) / (kPi * x);
}

double current_density(const CatState& state, double x, double t) {
  return std::imag(std::conj(psi_t(state, x, t)) * dpsi_dx_t(state, x, t)) /
         state.mass;
}

double filtered_current(const CatState& state, double t,
                        const DetectorBand& band) {
  validate(band);
  // Envelope of J: packets centered at c_k t/m with width |a|/sigma;
  // exp(-d^2 sigma^2/(2|a|^2)) reaches 1e-12 at d = sqrt(2 ln 1e12)*|a|/sigma.
  const double abs_a =
      std::hypot(state.sigma * state.sigma, 0.5 * t / state.mass);
  const double reach = 7.44 * abs_a / state.sigma;
  const double period = 2.0 * kPi / std::min(band.p1, band.p2);
  const double c_lo = state.p0 * t / state.mass;
  const double c_hi = (state.p0 + state.delta) * t / state.mass;
  const double lo = std::min({0.0, c_lo, c_hi}) - reach - period;
  const double hi = std::max({0.0, c_lo, c_hi}) + reach + period;
  const QuadratureResult res = integrate_1d(
      [&](double x) {
        return detector_kernel(x, band) * current_density(state, x, t);
      },
      lo, hi, tolerances().quad_1d);
  return res.value;
}

double filtered_current_negative_flux(const CatState& state,
                                      const DetectorBand& band,
                                      std::optional<Interval> window_tilde) {
  validate(state);
  validate(band);
  const RescaledParams r = state.rescaled();
  const double s2 = state.sigma * state.sigma;
  Interval window = window_tilde ? *window_tilde : default_trace_window(r);
  const auto eta_scaled = [&](double t_tilde) {
    // eta carries the dimensions of j; express it in t~ like the current.
    return s2 * filtered_current(state, s2 * t_tilde, band);
  };

  for (int attempt = 0;; ++attempt) {
    const int n =
        detail::beat_sample_count(r.p0_t, r.delta_t, window.width());
    const double h = window.width() / (n - 1);
    std::vector<double> times(n), values(n);
    for (int i = 0; i < n; ++i) {
      times[i] = (i == n - 1) ? window.hi : window.lo + i * h;
      values[i] = eta_scaled(times[i]);
    }

    bool touches_edge = false;
    double flux = 0.0;
    int i = 0;
    while (i < n) {
      if (values[i] >= 0.0) {
        ++i;
        continue;
      }
      int last = i;
      while (last + 1 < n && values[last + 1] < 0.0) ++last;
      if (i == 0 || last == n - 1) {
        touches_edge = true;
        break;
      }
      // Negative lobe: refine its zero endpoints, then integrate -eta.
      const double z1 =
          refine_root(eta_scaled, Bracket{times[i - 1], times[i]}, 1e-11);
      const double z2 =
          refine_root(eta_scaled, Bracket{times[last], times[last + 1]},
                      1e-11);
      if (z1 < z2)
        flux -= integrate_1d(eta_scaled, z1, z2, 1e-12).value;
      i = last + 1;
    }
    if (!touches_edge) return std::max(0.0, flux);

    if (attempt >= 1)
      throw WindowTooSmall(
          "filtered_current_negative_flux: negative lobe touches the window "
          "boundary after expansion");
    const double center = 0.5 * (window.lo + window.hi);
    const double half = window.width();
    window = Interval{center - half, center + half};
  }
}

EtaScanTable filtered_current_scan(const std::vector<double>& delta_t_values,
                                   const std::vector<double>& alpha_values,
                                   const DetectorBand& band,
                                   const EtaScanOptions& options) {
  validate(band);
  EtaScanTable table;
  table.rows.resize(delta_t_values.size() * alpha_values.size());
  parallel_for(table.rows.size(), options.threads, [&](size_t idx) {
    const double delta_t = delta_t_values[idx / alpha_values.size()];
    const double alpha = alpha_values[idx % alpha_values.size()];
    EtaScanRow& row = table.rows[idx];
    row.delta_t = delta_t;
    row.alpha = alpha;
    row.delta_neg = std::numeric_limits<double>::quiet_NaN();
    row.eta_neg_flux = std::numeric_limits<double>::quiet_NaN();
    try {
      const RescaledParams params{options.p0_t, delta_t, alpha,
                                  options.theta};
      row.delta_neg = negativity_delta(params);
      row.eta_neg_flux =
          filtered_current_negative_flux(make_cat_state(params, 1.0), band);
    } catch (const std::exception& e) {
      row.flags = e.what();
    }
  });
  return table;
}

void EtaScanTable::write_csv(std::ostream& os) const {
  os << "delta_t,alpha,delta_neg,eta_neg_flux\n";
  for (const EtaScanRow& row : rows)
    os << fmt_double(row.delta_t) << ',' << fmt_double(row.alpha) << ','
       << fmt_double(row.delta_neg) << ',' << fmt_double(row.eta_neg_flux)
       << '\n';
}

}  // namespace backflow
