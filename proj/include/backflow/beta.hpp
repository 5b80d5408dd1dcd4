#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "backflow/dynamics.hpp"
#include "backflow/states.hpp"

namespace backflow {

// Backflow strength beta = |inf_{t1<t2} [P(t2) - P(t1)]| with the achieving
// interval in t~ units. tail_limited marks values at or below the 1e-6
// negative-momentum-leakage floor, where the interval is not meaningful.
struct BackflowResult {
  double beta = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;
  int peak_index = -1;  // ordinal of the dominating negative lobe
  bool tail_limited = true;
};

// Backflow leakage floor: the Gaussian momentum tail below p = 0 produces
// spurious negative current of order the tail mass (~1e-9 at p0_t = 3).
constexpr double kBackflowTailThreshold = 1e-6;

// Dense-P global search (running-max formulation) followed by local
// root-refinement of both interval endpoints on j~. The search covers the
// whole window, not only the central lobe. When the achieving interval
// touches the window boundary the window is doubled once; a second touch
// throws WindowTooSmall.
BackflowResult compute_beta(const CatState& state,
                            std::optional<Interval> window_tilde = {});

// Sudden-death boundary in alpha at theta = pi: 1 + delta_t/p0_t.
// j~(0) changes sign across it.
double backflow_threshold_alpha(double delta_t, double p0_t);

struct ScanAxes {
  std::vector<double> alpha{2.0};
  std::vector<double> delta_t{11.0};
  std::vector<double> p0_t{3.0};
  std::vector<double> theta{3.14159265358979323846};
};

struct ScanOptions {
  bool with_negativity = true;
  int threads = 1;
  std::optional<Interval> window_tilde;
};

struct ScanRow {
  RescaledParams params;
  double beta = 0.0;
  double delta_neg = 0.0;
  bool tail_limited = true;
  std::string flags;  // empty on success, error text otherwise
};

struct ScanTable {
  ScanAxes axes;
  std::vector<ScanRow> rows;

  // header: alpha,delta_t,p0_t,theta,beta,delta_neg,tail_limited,flags
  void write_csv(std::ostream& os) const;
  void write_json_lines(std::ostream& os) const;
};

// One row per explicitly listed state, in order.
ScanTable scan_states(const std::vector<RescaledParams>& states,
                      const ScanOptions& options = {});

// Row-major product over (alpha, delta_t, p0_t, theta). Per-row failures
// are recorded in the row flags; the scan itself never aborts.
ScanTable scan_beta_delta(const ScanAxes& axes,
                          const ScanOptions& options = {});

}  // namespace backflow
