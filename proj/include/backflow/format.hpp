#pragma once

#include <cstdio>
#include <string>

namespace backflow {

// Shortest round-trip decimal form; used everywhere doubles reach CSV/JSON
// so identical runs produce byte-identical files.
inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // Prefer the shortest representation that still round-trips.
  for (int prec = 1; prec < 17; ++prec) {
    char shorter[40];
    std::snprintf(shorter, sizeof shorter, "%.*g", prec, v);
    double back = 0.0;
    std::sscanf(shorter, "%lf", &back);
    if (back == v) return shorter;
  }
  return buf;
}

}  // namespace backflow
