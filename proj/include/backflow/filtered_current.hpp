#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "backflow/numerics.hpp"
#include "backflow/states.hpp"

namespace backflow {

// Momentum-dimension resolution pair of the detector kernel. The kernel is
// the difference of two smooth Dirac-delta approximations with spatial
// resolutions 1/p1 and 1/p2, so the filtered current below is the
// difference of two finite-resolution current measurements.
struct DetectorBand {
  double p1 = 7.0;
  double p2 = 9.0;
};

void validate(const DetectorBand& band);

// (sin(p1 x) - sin(p2 x)) / (pi x); even in x, value (p1 - p2)/pi at x = 0.
// Implemented with the sign order as written; swapping p1 and p2 negates it.
double detector_kernel(double x, const DetectorBand& band);

// Ordinary current density J(x, t) = (i/2m)(psi dpsi*/dx - psi* dpsi/dx);
// equals current_j at x = 0.
double current_density(const CatState& state, double x, double t);

// Filtered current: integral of detector_kernel(x) * J(x, t) over x.
// The x-integral is truncated where the Gaussian envelope of J falls below
// 1e-12 of its peak, then extended by one kernel oscillation period (the
// kernel itself decays only as 1/x).
double filtered_current(const CatState& state, double t,
                        const DetectorBand& band);

// integral over the window of max(-eta, 0) dt, in t~ units. Negative lobes
// touching the window edge trigger one window doubling, as in compute_beta.
double filtered_current_negative_flux(const CatState& state,
                                      const DetectorBand& band,
                                      std::optional<Interval> window_tilde = {});

struct EtaScanRow {
  double delta_t = 0.0;
  double alpha = 0.0;
  double delta_neg = 0.0;
  double eta_neg_flux = 0.0;
  std::string flags;
};

struct EtaScanTable {
  std::vector<EtaScanRow> rows;

  void write_csv(std::ostream& os) const;  // delta_t,alpha,delta_neg,eta_neg_flux
};

struct EtaScanOptions {
  double p0_t = 3.0;
  double theta = 3.14159265358979323846;
  int threads = 1;
};

// Rows over (delta_t outer, alpha inner) with fixed band; per-row failures
// are flagged, never fatal.
EtaScanTable filtered_current_scan(const std::vector<double>& delta_t_values,
                                   const std::vector<double>& alpha_values,
                                   const DetectorBand& band,
                                   const EtaScanOptions& options = {});

}  // namespace backflow
