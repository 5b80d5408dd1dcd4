#include "backflow/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>

#include "backflow/detail/smoothed_cat.hpp"
#include "backflow/dynamics.hpp"
#include "backflow/format.hpp"

namespace backflow {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kWignerBound = 2.0 / kPi;  // asserted bound on |W|

using detail::SmoothedCatTerms;

SmoothedCatTerms smoothed_terms(const RescaledParams& r, double kappa) {
  return detail::make_smoothed_terms(r, kappa, kappa);
}

inline double eval_smoothed(const SmoothedCatTerms& t, double x, double p) {
  return detail::eval_smoothed_cat(t, x, p);
}

int next_pow2(double v) {
  int n = 8;
  while (n < v && n < (1 << 20)) n *= 2;
  return n;
}

}  // namespace

Interval default_x_range(const RescaledParams& params, double kappa) {
  const double width = std::sqrt(0.5 * (2.0 + kappa));
  const double freq = params.delta_t / (1.0 + 0.5 * kappa);
  // One fringe-period margin block on top of 8 envelope widths; capped for
  // near-coincident packets where the fringe period diverges but carries no
  // negativity mass beyond the envelope anyway.
  const double fringe_margin = (freq > 0.0) ? 4.0 * kPi / freq : 22.0;
  const double half = std::min(30.0, 8.0 * width + std::min(22.0, fringe_margin));
  return Interval{-half, half};
}

Interval default_p_range(const RescaledParams& params, double kappa) {
  const double width = std::sqrt(1.0 + 2.0 * kappa);
  return Interval{params.p0_t - 6.0 * width,
                  params.p0_t + params.delta_t + 6.0 * width};
}

double wigner_cat(const RescaledParams& params, double x, double p) {
  return eval_smoothed(smoothed_terms(params, 0.0), x, p);
}

double wigner_cat_smoothed(const RescaledParams& params, double x, double p,
                           double kappa) {
  return eval_smoothed(smoothed_terms(params, kappa), x, p);
}

double wigner_cat_smoothed_aniso(const RescaledParams& params, double x,
                                 double p, double kappa_x, double kappa_p) {
  return detail::eval_smoothed_cat(
      detail::make_smoothed_terms(params, kappa_x, kappa_p), x, p);
}

double wigner_numeric(const CatState& state, double x, double p, double t,
                      double abs_tol) {
  // y-extent: the product of the two evolved packets is Gaussian in y with
  // centers at (c_j - c_k) t / m and width sqrt(2)|a|/sigma.
  const double abs_a = std::hypot(state.sigma * state.sigma,
                                  0.5 * t / state.mass);
  const double spread = 14.0 * std::sqrt(2.0) * abs_a / state.sigma;
  const double sep = std::abs(state.delta * t / state.mass);
  const Fn1D integrand = [&](double y) {
    const Complex prod = std::conj(psi_t(state, x + 0.5 * y, t)) *
                         psi_t(state, x - 0.5 * y, t) *
                         std::polar(1.0, p * y);
    return prod.real();
  };
  const QuadratureResult res =
      integrate_1d(integrand, -sep - spread, sep + spread, abs_tol);
  return res.value / (2.0 * kPi);
}

double wigner_numeric_imag(const CatState& state, double x, double p,
                           double t, double abs_tol) {
  const double abs_a = std::hypot(state.sigma * state.sigma,
                                  0.5 * t / state.mass);
  const double spread = 14.0 * std::sqrt(2.0) * abs_a / state.sigma;
  const double sep = std::abs(state.delta * t / state.mass);
  const Fn1D integrand = [&](double y) {
    const Complex prod = std::conj(psi_t(state, x + 0.5 * y, t)) *
                         psi_t(state, x - 0.5 * y, t) *
                         std::polar(1.0, p * y);
    return prod.imag();
  };
  const QuadratureResult res =
      integrate_1d(integrand, -sep - spread, sep + spread, abs_tol);
  return res.value / (2.0 * kPi);
}

std::pair<double, double> shear(double x, double p, double t, double mass) {
  return {x + p * t / mass, p};
}

double wigner_t(const RescaledParams& params, double x, double p,
                double t_tilde) {
  return wigner_cat(params, x - p * t_tilde, p);
}

double PhaseSpaceGrid::x_at(int i) const {
  return x_range.lo + (i + 0.5) * x_range.width() / nx;
}

double PhaseSpaceGrid::p_at(int j) const {
  return p_range.lo + (j + 0.5) * p_range.width() / np;
}

PhaseSpaceGrid build_grid(const RescaledParams& params, const GridSpec& spec,
                          double kappa, double t_tilde) {
  if (spec.nx < 8 || spec.np < 8)
    throw std::invalid_argument("build_grid: nx, np must be >= 8");
  PhaseSpaceGrid grid;
  grid.x_range = spec.x_range.value_or(default_x_range(params, kappa));
  grid.p_range = spec.p_range.value_or(default_p_range(params, kappa));
  // Sheared grids stretch in x by the sampled momenta.
  if (!spec.x_range && t_tilde != 0.0) {
    const double stretch =
        std::abs(t_tilde) * std::max(std::abs(grid.p_range.lo),
                                     std::abs(grid.p_range.hi));
    grid.x_range.lo -= stretch;
    grid.x_range.hi += stretch;
  }
  grid.nx = spec.nx;
  grid.np = spec.np;
  grid.s = -kappa;
  grid.values.resize(size_t(grid.nx) * grid.np);
  const SmoothedCatTerms terms = smoothed_terms(params, kappa);
  double max_abs = 0.0;
  for (int i = 0; i < grid.nx; ++i) {
    const double x = grid.x_at(i);
    for (int j = 0; j < grid.np; ++j) {
      const double p = grid.p_at(j);
      const double w = eval_smoothed(terms, x - p * t_tilde, p);
      grid.at(i, j) = w;
      max_abs = std::max(max_abs, std::abs(w));
      if (!std::isfinite(w))
        throw std::logic_error("build_grid: non-finite Wigner value");
    }
  }
  if (kappa == 0.0 && max_abs > kWignerBound + 1e-9)
    throw std::logic_error("build_grid: |W| exceeded 2/pi");
  return grid;
}

double negativity_delta(const RescaledParams& params, const GridSpec& spec,
                        double kappa) {
  const Interval xr = spec.x_range.value_or(default_x_range(params, kappa));
  const Interval pr = spec.p_range.value_or(default_p_range(params, kappa));
  const SmoothedCatTerms terms = smoothed_terms(params, kappa);

  // >= 8 grid points per interference fringe from the start.
  const double fringe_points =
      (terms.fringe_freq > 0.0)
          ? 8.0 * xr.width() * terms.fringe_freq / (2.0 * kPi)
          : 0.0;
  int nx = std::max(spec.nx, next_pow2(fringe_points));
  int np = std::max(spec.np, 256);

  const auto midpoint_delta = [&](int mx, int mp) {
    const double hx = xr.width() / mx;
    const double hp = pr.width() / mp;
    std::vector<double> gauss_u(mp), gauss_l(mp), gauss_m(mp);
    for (int j = 0; j < mp; ++j) {
      const double p = pr.lo + (j + 0.5) * hp;
      const double du = p - terms.p_upper;
      const double dl = p - terms.p_lower;
      const double dm = p - terms.p_mid;
      gauss_u[j] = std::exp(-du * du * terms.inv_pvar);
      gauss_l[j] = terms.alpha2 * std::exp(-dl * dl * terms.inv_pvar);
      gauss_m[j] = std::exp(-dm * dm * terms.inv_pvar);
    }
    double total = 0.0;
    for (int i = 0; i < mx; ++i) {
      const double x = xr.lo + (i + 0.5) * hx;
      const double ex = terms.pref * std::exp(-x * x * terms.inv_xvar);
      const double fringe = terms.fringe_amp *
                            std::cos(x * terms.fringe_freq - terms.theta);
      double column = 0.0;
      for (int j = 0; j < mp; ++j) {
        const double w = ex * (gauss_u[j] + gauss_l[j] + fringe * gauss_m[j]);
        if (w < 0.0) column -= w;
      }
      total += column;
    }
    return total * hx * hp;
  };

  double prev = midpoint_delta(nx, np);
  while (true) {
    if (nx >= spec.max_n)
      throw NonConvergence("negativity_delta: refinement ceiling reached");
    nx *= 2;
    np *= 2;
    const double cur = midpoint_delta(nx, np);
    if (std::abs(cur - prev) < spec.stab_tol) return cur;
    prev = cur;
  }
}

std::pair<double, double> sector_angles(const Sector& sector, double mass) {
  return {0.5 * kPi + std::atan(sector.t1 / mass),
          0.5 * kPi + std::atan(sector.t2 / mass)};
}

namespace {

double sector_integral(const RescaledParams& params, const Sector& sector,
                       int part) {  // part: 0 = W, +1 = max(W,0), -1 = max(-W,0)
  if (!(sector.t1 < sector.t2))
    throw std::invalid_argument("sector: requires t1 < t2");
  const auto [phi1, phi2] = sector_angles(sector);
  if (phi2 - phi1 < 1e-300) return 0.0;
  const Interval xr = default_x_range(params);
  const Interval pr = default_p_range(params);
  const double radius =
      std::hypot(std::max(std::abs(xr.lo), std::abs(xr.hi)),
                 std::max(std::abs(pr.lo), std::abs(pr.hi)));
  const SmoothedCatTerms terms = smoothed_terms(params, 0.0);
  const Fn2D integrand = [&](double phi, double r) {
    double w = eval_smoothed(terms, r * std::cos(phi), r * std::sin(phi));
    if (part > 0) w = std::max(w, 0.0);
    if (part < 0) w = std::max(-w, 0.0);
    return r * w;
  };
  const QuadratureResult res =
      integrate_2d(integrand, Interval{phi1, phi2}, Interval{0.0, radius},
                   tolerances().quad_2d);
  return res.value;
}

}  // namespace

double sector_flux(const RescaledParams& params, const Sector& sector) {
  return sector_integral(params, sector, 0);
}

std::pair<double, double> sector_split_volumes(const RescaledParams& params,
                                               const Sector& sector) {
  return {sector_integral(params, sector, +1),
          sector_integral(params, sector, -1)};
}

void PhaseSpaceGrid::write_csv(std::ostream& os) const {
  os << "x_tilde,p_tilde,w\n";
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < np; ++j)
      os << fmt_double(x_at(i)) << ',' << fmt_double(p_at(j)) << ','
         << fmt_double(at(i, j)) << '\n';
}

void PhaseSpaceGrid::write_binary(std::ostream& os) const {
  char header[32] = {};
  std::memcpy(header, "WGRID001", 8);
  const uint32_t unx = uint32_t(nx), unp = uint32_t(np);
  std::memcpy(header + 8, &unx, 4);
  std::memcpy(header + 12, &unp, 4);
  os.write(header, sizeof header);
  const double bounds[4] = {x_range.lo, x_range.hi, p_range.lo, p_range.hi};
  os.write(reinterpret_cast<const char*>(bounds), sizeof bounds);
  os.write(reinterpret_cast<const char*>(values.data()),
           std::streamsize(values.size() * sizeof(double)));
}

PhaseSpaceGrid read_grid_binary(std::istream& is) {
  char header[32] = {};
  is.read(header, sizeof header);
  if (!is || std::memcmp(header, "WGRID001", 8) != 0)
    throw std::runtime_error("read_grid_binary: bad magic");
  uint32_t unx = 0, unp = 0;
  std::memcpy(&unx, header + 8, 4);
  std::memcpy(&unp, header + 12, 4);
  PhaseSpaceGrid grid;
  grid.nx = int(unx);
  grid.np = int(unp);
  double bounds[4] = {};
  is.read(reinterpret_cast<char*>(bounds), sizeof bounds);
  grid.x_range = Interval{bounds[0], bounds[1]};
  grid.p_range = Interval{bounds[2], bounds[3]};
  grid.values.resize(size_t(grid.nx) * grid.np);
  is.read(reinterpret_cast<char*>(grid.values.data()),
          std::streamsize(grid.values.size() * sizeof(double)));
  if (!is) throw std::runtime_error("read_grid_binary: truncated file");
  return grid;
}

}  // namespace backflow
