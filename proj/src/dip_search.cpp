#include "backflow/detail/dip_search.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace backflow::detail {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Nearest sign transition of the sampled current around index center:
// direction -1 wants a +,- crossing (probability maximum), +1 a -,+
// crossing (probability minimum).
std::optional<Bracket> crossing_near(const std::vector<double>& times,
                                     const std::vector<double>& current,
                                     int center, int direction) {
  const int n = int(times.size());
  for (int radius = 1; radius <= 6; ++radius) {
    const int lo = std::max(0, center - radius);
    const int hi = std::min(n - 1, center + radius);
    for (int i = lo; i < hi; ++i) {
      const double a = current[i], b = current[i + 1];
      if (direction < 0 ? (a > 0.0 && b <= 0.0) : (a < 0.0 && b >= 0.0))
        return Bracket{times[i], times[i + 1]};
    }
  }
  return std::nullopt;
}

struct Lobe {
  int first, last;  // sample index range with current < 0
  double flux;      // trapezoid estimate
};

std::vector<Lobe> negative_lobes(const std::vector<double>& times,
                                 const std::vector<double>& current) {
  std::vector<Lobe> lobes;
  const int n = int(times.size());
  int i = 0;
  while (i < n) {
    if (current[i] < 0.0) {
      Lobe lobe{i, i, 0.0};
      while (lobe.last + 1 < n && current[lobe.last + 1] < 0.0) ++lobe.last;
      for (int k = lobe.first; k < lobe.last; ++k)
        lobe.flux += 0.5 * (current[k] + current[k + 1]) *
                     (times[k + 1] - times[k]);
      lobes.push_back(lobe);
      i = lobe.last + 1;
    } else {
      ++i;
    }
  }
  return lobes;
}

}  // namespace

int beat_sample_count(double p0_t, double delta_t, double width) {
  const double omega = 0.5 * delta_t * (2.0 * p0_t + delta_t);
  const double periods = omega * width / (2.0 * kPi);
  const double n = std::max(801.0, 16.0 * periods);
  return int(std::min(n, 24001.0)) | 1;
}

DipCore dip_search(const std::vector<double>& times,
                   const std::vector<double>& cumulative,
                   const std::vector<double>& current,
                   const Fn1D& current_fn) {
  const int n = int(times.size());
  DipCore core;
  double run_max = cumulative[0];
  int run_argmax = 0;
  for (int i = 0; i < n; ++i) {
    if (cumulative[i] > run_max) {
      run_max = cumulative[i];
      run_argmax = i;
    }
    const double drop = cumulative[i] - run_max;
    if (drop < core.drop) {
      core.drop = drop;
      core.i1 = run_argmax;
      core.i2 = i;
    }
  }
  core.t1 = times[core.i1];
  core.t2 = times[core.i2];
  core.boundary = (core.i1 == 0 || core.i2 == n - 1);
  if (core.drop > -1e-12 || core.boundary) return core;

  if (auto b = crossing_near(times, current, core.i1, -1))
    core.t1 = refine_root(current_fn, *b, 1e-11);
  if (auto b = crossing_near(times, current, core.i2, +1))
    core.t2 = refine_root(current_fn, *b, 1e-11);

  double worst = 0.0;
  const std::vector<Lobe> lobes = negative_lobes(times, current);
  for (size_t k = 0; k < lobes.size(); ++k) {
    if (times[lobes[k].last] < core.t1 || times[lobes[k].first] > core.t2)
      continue;
    if (lobes[k].flux < worst) {
      worst = lobes[k].flux;
      core.peak_index = int(k);
    }
  }
  return core;
}

}  // namespace backflow::detail
