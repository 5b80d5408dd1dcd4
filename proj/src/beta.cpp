#include "backflow/beta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "backflow/detail/dip_search.hpp"
#include "backflow/format.hpp"
#include "backflow/parallel.hpp"
#include "backflow/phase_space.hpp"

namespace backflow {

namespace {
constexpr double kPTol = 1e-11;        // P(t) tolerance in the dense search
constexpr double kPTolRefine = 1e-12;  // and at the refined endpoints
}  // namespace

BackflowResult compute_beta(const CatState& state,
                            std::optional<Interval> window_tilde) {
  validate(state);
  const RescaledParams r = state.rescaled();
  Interval window = window_tilde ? *window_tilde : default_trace_window(r);

  for (int attempt = 0;; ++attempt) {
    const int n = detail::beat_sample_count(r.p0_t, r.delta_t, window.width());
    const double h = window.width() / (n - 1);
    std::vector<double> times(n), prob(n), current(n);
    for (int i = 0; i < n; ++i)
      times[i] = (i == n - 1) ? window.hi : window.lo + i * h;
    for (int i = 0; i < n; ++i) {
      prob[i] = probability_P_scaled(state, times[i], kPTol);
      current[i] = current_j_scaled(state, times[i]);
    }

    const detail::DipCore core = detail::dip_search(
        times, prob, current,
        [&](double t) { return current_j_scaled(state, t); });

    if (core.drop > -1e-12) {
      // Monotone probability at sample resolution: nothing to refine.
      return BackflowResult{std::max(0.0, -core.drop), core.t1, core.t2, -1,
                            true};
    }

    const bool clipped = core.boundary || core.t1 <= window.lo + h ||
                         core.t2 >= window.hi - h || !(core.t1 < core.t2);
    if (!clipped) {
      const double beta = probability_P_scaled(state, core.t1, kPTolRefine) -
                          probability_P_scaled(state, core.t2, kPTolRefine);
      if (beta > 0.05)
        throw std::logic_error(
            "compute_beta: value exceeds the 0.05 sanity bound");
      return BackflowResult{std::max(0.0, beta), core.t1, core.t2,
                            core.peak_index,
                            beta <= kBackflowTailThreshold};
    }

    if (attempt >= 1)
      throw WindowTooSmall(
          "compute_beta: achieving interval touches the window boundary "
          "after expansion");
    const double center = 0.5 * (window.lo + window.hi);
    const double half = window.width();
    window = Interval{center - half, center + half};
  }
}

double backflow_threshold_alpha(double delta_t, double p0_t) {
  if (!(p0_t > 0.0))
    throw std::invalid_argument("backflow_threshold_alpha: p0_t must be > 0");
  if (!(delta_t >= 0.0))
    throw std::invalid_argument(
        "backflow_threshold_alpha: delta_t must be >= 0");
  return 1.0 + delta_t / p0_t;
}

ScanTable scan_states(const std::vector<RescaledParams>& states,
                      const ScanOptions& options) {
  ScanTable table;
  table.rows.resize(states.size());
  parallel_for(states.size(), options.threads, [&](size_t i) {
    ScanRow& row = table.rows[i];
    row.params = states[i];
    row.beta = std::numeric_limits<double>::quiet_NaN();
    row.delta_neg = std::numeric_limits<double>::quiet_NaN();
    try {
      const CatState state = make_cat_state(states[i], 1.0);
      const BackflowResult res = compute_beta(state, options.window_tilde);
      row.beta = res.beta;
      row.tail_limited = res.tail_limited;
      if (options.with_negativity)
        row.delta_neg = negativity_delta(states[i]);
    } catch (const std::exception& e) {
      row.flags = e.what();
    }
  });
  return table;
}

ScanTable scan_beta_delta(const ScanAxes& axes, const ScanOptions& options) {
  if (axes.alpha.empty() || axes.delta_t.empty() || axes.p0_t.empty() ||
      axes.theta.empty())
    throw std::invalid_argument("scan_beta_delta: empty axis");
  std::vector<RescaledParams> states;
  states.reserve(axes.alpha.size() * axes.delta_t.size() * axes.p0_t.size() *
                 axes.theta.size());
  for (double a : axes.alpha)
    for (double d : axes.delta_t)
      for (double p : axes.p0_t)
        for (double th : axes.theta)
          states.push_back(RescaledParams{p, d, a, th});
  ScanTable table = scan_states(states, options);
  table.axes = axes;
  return table;
}

namespace {
std::string sanitize_flags(std::string flags) {
  for (char& c : flags)
    if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ';';
  return flags;
}
}  // namespace

void ScanTable::write_csv(std::ostream& os) const {
  os << "alpha,delta_t,p0_t,theta,beta,delta_neg,tail_limited,flags\n";
  for (const ScanRow& row : rows) {
    os << fmt_double(row.params.alpha) << ',' << fmt_double(row.params.delta_t)
       << ',' << fmt_double(row.params.p0_t) << ','
       << fmt_double(row.params.theta) << ',' << fmt_double(row.beta) << ','
       << fmt_double(row.delta_neg) << ',' << (row.tail_limited ? 1 : 0) << ','
       << sanitize_flags(row.flags) << '\n';
  }
}

void ScanTable::write_json_lines(std::ostream& os) const {
  for (const ScanRow& row : rows) {
    os << "{\"alpha\":" << fmt_double(row.params.alpha)
       << ",\"delta_t\":" << fmt_double(row.params.delta_t)
       << ",\"p0_t\":" << fmt_double(row.params.p0_t)
       << ",\"theta\":" << fmt_double(row.params.theta)
       << ",\"beta\":" << fmt_double(row.beta)
       << ",\"delta_neg\":" << fmt_double(row.delta_neg)
       << ",\"tail_limited\":" << (row.tail_limited ? "true" : "false")
       << ",\"flags\":\"" << sanitize_flags(row.flags) << "\"}\n";
  }
}

}  // namespace backflow
