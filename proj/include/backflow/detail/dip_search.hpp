#pragma once

#include <vector>

#include "backflow/numerics.hpp"

namespace backflow::detail {

// Core of the backflow search shared by the plain and the s-dependent
// current: locate the global infimum of cumulative(t2) - cumulative(t1)
// over sampled t1 <= t2 (running-max formulation), then refine both
// endpoints onto the adjacent zeros of the current.
struct DipCore {
  double drop = 0.0;     // most negative sampled dip (<= 0)
  int i1 = 0, i2 = 0;    // sample indices of the achieving pair
  bool boundary = false; // the pair touches the sampling window edge
  double t1 = 0.0, t2 = 0.0;  // refined endpoint times
  int peak_index = -1;   // ordinal of the dominating negative lobe
};

DipCore dip_search(const std::vector<double>& times,
                   const std::vector<double>& cumulative,
                   const std::vector<double>& current,
                   const Fn1D& current_fn);

// Sample count that resolves the beat of the two packet momenta over the
// given window width: at least 16 samples per oscillation period.
int beat_sample_count(double p0_t, double delta_t, double width);

}  // namespace backflow::detail
