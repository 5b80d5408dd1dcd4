#include "backflow/states.hpp"

#include <cmath>

namespace backflow {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kDegeneracyEps = 1e-12;
}  // namespace

void validate(const RescaledParams& params) {
  if (!(params.p0_t > 0.0))
    throw std::invalid_argument("state: p0_t must be > 0");
  if (!(params.delta_t >= 0.0))
    throw std::invalid_argument("state: delta_t must be >= 0");
  if (!(params.alpha >= 0.0))
    throw std::invalid_argument("state: alpha must be >= 0");
  if (!std::isfinite(params.theta))
    throw std::invalid_argument("state: theta must be finite");
}

void validate(const CatState& state) {
  if (!(state.sigma > 0.0))
    throw std::invalid_argument("state: sigma must be > 0");
  if (!(state.mass > 0.0))
    throw std::invalid_argument("state: mass must be > 0");
  validate(state.rescaled());
}

CatState make_cat_state(const RescaledParams& params, double sigma) {
  CatState state;
  state.sigma = sigma;
  state.p0 = params.p0_t / sigma;
  state.delta = params.delta_t / sigma;
  state.alpha = params.alpha;
  state.theta = params.theta;
  CatState copy = state;
  validate(copy);
  return state;
}

double normalization_denominator(const RescaledParams& params) {
  const double d = 1.0 + params.alpha * params.alpha +
                   2.0 * std::exp(-0.5 * params.delta_t * params.delta_t) *
                       params.alpha * std::cos(params.theta);
  if (d <= kDegeneracyEps)
    throw DegenerateState("fully destructive superposition: normalization "
                          "denominator <= 1e-12");
  return d;
}

double normalization_constant(const CatState& state) {
  const double denom = normalization_denominator(state.rescaled());
  return std::pow(2.0 * state.sigma * state.sigma / kPi, 0.25) /
         std::sqrt(denom);
}

Complex phi0(const CatState& state, double p) {
  const double s2 = state.sigma * state.sigma;
  const double du = p - state.p0 - state.delta;
  const double dl = p - state.p0;
  const double n = normalization_constant(state);
  return n * (std::exp(-du * du * s2) +
              state.alpha * std::polar(1.0, state.theta) *
                  std::exp(-dl * dl * s2));
}

Complex psi0(const CatState& state, double x) {
  // Each momentum Gaussian transforms analytically:
  //   (2pi)^{-1/2} int dp e^{ipx} e^{-(p-c)^2 s^2} = e^{icx - x^2/(4s^2)} / (s sqrt(2)).
  const double s = state.sigma;
  const double n = normalization_constant(state);
  const double envelope = std::exp(-x * x / (4.0 * s * s));
  const Complex upper = std::polar(1.0, (state.p0 + state.delta) * x);
  const Complex lower =
      state.alpha * std::polar(1.0, state.theta + state.p0 * x);
  return n / (s * std::sqrt(2.0)) * envelope * (upper + lower);
}

double negative_momentum_mass(const CatState& state) {
  // |phi0|^2 is a sum of three Gaussians (two peaks plus the midpoint cross
  // term); each half-line integral is an erfc.
  const RescaledParams r = state.rescaled();
  const double denom = normalization_denominator(r);
  const double a = state.alpha;
  const double cu = r.p0_t + r.delta_t;       // upper center, rescaled
  const double cl = r.p0_t;                   // lower center
  const double cm = r.p0_t + 0.5 * r.delta_t; // cross-term center
  const double cross = 2.0 * a * std::cos(state.theta) *
                       std::exp(-0.5 * r.delta_t * r.delta_t);
  const double sqrt2 = std::sqrt(2.0);
  const double mass = 0.5 *
                      (std::erfc(sqrt2 * cu) + a * a * std::erfc(sqrt2 * cl) +
                       cross * std::erfc(sqrt2 * cm)) /
                      denom;
  return std::max(0.0, mass);
}

double mean_energy(const CatState& state) {
  // int p^2 e^{-2 s^2 (p-c)^2} dp = sqrt(pi/(2 s^2)) (c^2 + 1/(4 s^2))
  const RescaledParams r = state.rescaled();
  const double denom = normalization_denominator(r);
  const double cu = state.p0 + state.delta;
  const double cl = state.p0;
  const double cm = state.p0 + 0.5 * state.delta;
  const double a = state.alpha;
  const double cross =
      2.0 * a * std::cos(state.theta) * std::exp(-0.5 * r.delta_t * r.delta_t);
  const double q = 1.0 / (4.0 * state.sigma * state.sigma);
  const double second_moment =
      q + (cu * cu + a * a * cl * cl + cross * cm * cm) / denom;
  return second_moment / (2.0 * state.mass);
}

double sigma_for_energy(const RescaledParams& params, double energy) {
  if (!(energy > 0.0))
    throw Unattainable("sigma_for_energy: energy must be > 0");
  const double e1 = mean_energy(make_cat_state(params, 1.0));
  return std::sqrt(e1 / energy);
}

}  // namespace backflow
