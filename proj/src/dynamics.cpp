#include "backflow/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "backflow/format.hpp"
#include "backflow/phase_space.hpp"

namespace backflow {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Shared pieces of the closed-form evolved wave function
//   psi_t(x) = N/sqrt(2a) * sum_k A_k exp( (2 s^2 c_k + ix)^2/(4a) - s^2 c_k^2 )
// with a = s^2 + i t/(2m); the k-th packet has center c_k and amplitude A_k.
struct EvolvedPacket {
  Complex a;
  Complex prefactor;          // N / sqrt(2a)
  double centers[2];          // momenta: p0+delta, p0
  Complex amplitudes[2];      // 1, alpha e^{i theta}
};

EvolvedPacket evolved_packet(const CatState& state, double t) {
  EvolvedPacket pk;
  const double s2 = state.sigma * state.sigma;
  pk.a = Complex(s2, 0.5 * t / state.mass);
  pk.prefactor = normalization_constant(state) / std::sqrt(2.0 * pk.a);
  pk.centers[0] = state.p0 + state.delta;
  pk.centers[1] = state.p0;
  pk.amplitudes[0] = 1.0;
  pk.amplitudes[1] = state.alpha * std::polar(1.0, state.theta);
  return pk;
}

Complex packet_term_exponent(const EvolvedPacket& pk, double s2, double c,
                             double x) {
  const Complex u(2.0 * s2 * c, x);
  return u * u / (4.0 * pk.a) - s2 * c * c;
}

// Packet width of |psi_t|^2 and rightmost packet center, for truncation.
void packet_extent(const CatState& state, double t, double* center_hi,
                   double* width) {
  const double s2 = state.sigma * state.sigma;
  const double abs_a =
      std::hypot(s2, 0.5 * t / state.mass);
  *width = abs_a / state.sigma;
  const double v_hi = (state.p0 + state.delta) / state.mass;
  const double v_lo = state.p0 / state.mass;
  *center_hi = std::max(v_hi * t, v_lo * t);
}

}  // namespace

Complex phi_t(const CatState& state, double p, double t) {
  return phi0(state, p) *
         std::polar(1.0, -0.5 * p * p * t / state.mass);
}

Complex psi_t(const CatState& state, double x, double t) {
  const EvolvedPacket pk = evolved_packet(state, t);
  const double s2 = state.sigma * state.sigma;
  Complex sum = 0.0;
  for (int k = 0; k < 2; ++k)
    sum += pk.amplitudes[k] *
           std::exp(packet_term_exponent(pk, s2, pk.centers[k], x));
  return pk.prefactor * sum;
}

Complex dpsi_dx_t(const CatState& state, double x, double t) {
  const EvolvedPacket pk = evolved_packet(state, t);
  const double s2 = state.sigma * state.sigma;
  Complex sum = 0.0;
  for (int k = 0; k < 2; ++k) {
    const Complex u(2.0 * s2 * pk.centers[k], x);
    // d/dx of the exponent is i*u/(2a)
    sum += pk.amplitudes[k] *
           std::exp(packet_term_exponent(pk, s2, pk.centers[k], x)) *
           (Complex(0.0, 1.0) * u / (2.0 * pk.a));
  }
  return pk.prefactor * sum;
}

double probability_P(const CatState& state, double t, double abs_tol) {
  double center_hi = 0.0, width = 0.0;
  packet_extent(state, t, &center_hi, &width);
  const double hi = std::max(0.0, center_hi) + 12.0 * width;
  const QuadratureResult res = integrate_1d(
      [&](double x) { return std::norm(psi_t(state, x, t)); }, 0.0, hi,
      abs_tol);
  return res.value;
}

double current_j(const CatState& state, double t, CurrentRoute route) {
  if (route == CurrentRoute::kWaveFunction) {
    const Complex psi = psi_t(state, 0.0, t);
    const Complex dpsi = dpsi_dx_t(state, 0.0, t);
    return std::imag(std::conj(psi) * dpsi) / state.mass;
  }
  // Wigner route: j = int dp (p/m) W(0, p; t). In rescaled variables the
  // free flow is a shear, so j~ = int dp~ p~ W0(-p~ t~/m, p~) and
  // j = j~ / sigma^2.
  const RescaledParams r = state.rescaled();
  const double t_tilde = t / (state.sigma * state.sigma);
  const double p_lo = std::min(r.p0_t - 8.0, -2.0);
  const double p_hi = r.p0_t + r.delta_t + 8.0;
  const QuadratureResult res = integrate_1d(
      [&](double p) {
        return p * wigner_cat(r, -p * t_tilde / state.mass, p);
      },
      p_lo, p_hi, tolerances().quad_1d);
  return res.value / (state.sigma * state.sigma);
}

double current_j_scaled(const CatState& state, double t_tilde,
                        CurrentRoute route) {
  const double s2 = state.sigma * state.sigma;
  return s2 * current_j(state, s2 * t_tilde, route);
}

double probability_P_scaled(const CatState& state, double t_tilde,
                            double abs_tol) {
  return probability_P(state, state.sigma * state.sigma * t_tilde, abs_tol);
}

FluxInterval flux_F(const CatState& state, double t1_tilde, double t2_tilde) {
  if (!(t1_tilde < t2_tilde))
    throw std::invalid_argument("flux_F: requires t1 < t2");
  const double flux = probability_P_scaled(state, t2_tilde) -
                      probability_P_scaled(state, t1_tilde);
  return FluxInterval{t1_tilde, t2_tilde, flux};
}

CurrentTrace current_trace(const CatState& state, Interval window_tilde,
                           int n_samples) {
  if (n_samples < 16)
    throw std::invalid_argument("current_trace: n_samples must be >= 16");
  CurrentTrace trace;
  trace.times.resize(n_samples);
  trace.values.resize(n_samples);
  const double h = window_tilde.width() / (n_samples - 1);
  for (int i = 0; i < n_samples; ++i) {
    const double t = (i == n_samples - 1) ? window_tilde.hi
                                          : window_tilde.lo + i * h;
    trace.times[i] = t;
    trace.values[i] = current_j_scaled(state, t);
  }
  // Bracket sign changes of the sampled values; exact zeros fold into the
  // surrounding transition.
  int prev = -1;
  int prev_sign = 0;
  for (int i = 0; i < n_samples; ++i) {
    const double v = trace.values[i];
    const int sign = (v > 0.0) - (v < 0.0);
    if (sign == 0) continue;
    if (prev_sign != 0 && sign != prev_sign)
      trace.zero_brackets.push_back(
          Bracket{trace.times[prev], trace.times[i]});
    prev = i;
    prev_sign = sign;
  }
  (void)prev;
  return trace;
}

Interval default_trace_window(const RescaledParams& params) {
  const CatState state = make_cat_state(params, 1.0);
  double T = std::max(1.0, 20.0 / (params.delta_t * params.p0_t + 1.0));
  for (int attempt = 0; attempt < 48; ++attempt) {
    // Coarse amplitude scan; only relative lobe sizes matter here.
    const int n = 512;
    double max_abs = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double t = -T + 2.0 * T * i / n;
      max_abs = std::max(max_abs, std::abs(current_j_scaled(state, t)));
    }
    const double edge = std::max(std::abs(current_j_scaled(state, -T)),
                                 std::abs(current_j_scaled(state, T)));
    if (edge < 1e-6 * max_abs) break;
    T *= 1.5;
  }
  return Interval{-T, T};
}

void CurrentTrace::write_csv(std::ostream& os) const {
  os << "t_tilde,j_tilde\n";
  for (size_t i = 0; i < times.size(); ++i)
    os << fmt_double(times[i]) << ',' << fmt_double(values[i]) << '\n';
}

std::string FluxInterval::to_json() const {
  return "{\"t1\":" + fmt_double(t1) + ",\"t2\":" + fmt_double(t2) +
         ",\"flux\":" + fmt_double(flux) + "}";
}

}  // namespace backflow
