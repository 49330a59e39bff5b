#include "cavityfock/core_state.hpp"

#include <cmath>

namespace cavityfock {

double FieldState::norm_sq() const {
  double s = 0.0;
  for (const auto& a : amplitudes) s += std::norm(a);
  return s;
}

double FieldState::tail_mass() const {
  if (amplitudes.size() < 2) return norm_sq();
  return std::norm(amplitudes[amplitudes.size() - 1]) +
         std::norm(amplitudes[amplitudes.size() - 2]);
}

void FieldState::normalize() {
  const double n = std::sqrt(norm_sq());
  for (auto& a : amplitudes) a /= n;
}

void FieldState::check_tail() const {
  if (tail_mass() >= tail_threshold)
    throw TruncationTooSmall("state tail mass " + format_sci(tail_mass()) +
                             " at n_max " + std::to_string(n_max) +
                             " exceeds threshold");
}

AtomState AtomState::orthogonal() const {
  return {-std::conj(beta), std::conj(alpha)};
}

double AtomState::norm_sq() const { return std::norm(alpha) + std::norm(beta); }

double FieldDensity::trace_real() const {
  double t = 0.0;
  for (int i = 0; i <= n_max; ++i) t += at(i, i).real();
  return t;
}

double FieldDensity::hermiticity_error() const {
  double worst = 0.0;
  for (int i = 0; i <= n_max; ++i)
    for (int j = i; j <= n_max; ++j)
      worst = std::max(worst, std::abs(at(i, j) - std::conj(at(j, i))));
  return worst;
}

std::vector<double> FieldDensity::diagonal() const {
  std::vector<double> d(n_max + 1);
  for (int i = 0; i <= n_max; ++i) d[i] = at(i, i).real();
  return d;
}

FieldDensity FieldDensity::from_pure(const FieldState& psi) {
  FieldDensity rho;
  rho.n_max = psi.n_max;
  rho.tail_threshold = psi.tail_threshold;
  rho.matrix.assign(static_cast<size_t>(psi.n_max + 1) * (psi.n_max + 1), 0.0);
  for (int i = 0; i <= psi.n_max; ++i)
    for (int j = 0; j <= psi.n_max; ++j)
      rho.at(i, j) = psi.amplitudes[i] * std::conj(psi.amplitudes[j]);
  return rho;
}

double JointState::norm_sq() const {
  double s = 0.0;
  for (const auto& a : e_branch) s += std::norm(a);
  for (const auto& a : g_branch) s += std::norm(a);
  return s;
}

int default_n_max(Complex alpha_amp) {
  const double a = std::abs(alpha_amp);
  return static_cast<int>(std::ceil(a * a + 8.0 * a + 20.0));
}

FieldState coherent_state(Complex alpha_amp, int n_max, double tail_threshold) {
  if (n_max < 1) throw TruncationTooSmall("coherent_state requires n_max >= 1");
  FieldState psi;
  psi.n_max = n_max;
  psi.tail_threshold = tail_threshold;
  psi.amplitudes.resize(n_max + 1);
  // d_0 = exp(-|a|^2/2), d_n = d_{n-1} a / sqrt(n)
  psi.amplitudes[0] = std::exp(-std::norm(alpha_amp) / 2.0);
  for (int n = 1; n <= n_max; ++n)
    psi.amplitudes[n] = psi.amplitudes[n - 1] * alpha_amp / std::sqrt(double(n));
  const double window_mass = psi.norm_sq();
  if (1.0 - window_mass >= tail_threshold)
    throw TruncationTooSmall("coherent-state tail beyond n_max " +
                             std::to_string(n_max) + " holds " +
                             format_sci(1.0 - window_mass) + " probability");
  psi.normalize();
  return psi;
}

AtomState prepare_atom(const PulseParams& pulse) {
  if (pulse.rabi_frequency < 0.0 || pulse.duration < 0.0)
    throw InvalidModel("pulse rabi_frequency and duration must be non-negative");
  const double half_area = pulse.rabi_frequency * pulse.duration / 2.0;
  return {std::cos(half_area),
          std::sin(half_area) * std::polar(1.0, pulse.phase)};
}

double mean_n(const FieldState& state) {
  double m = 0.0;
  for (size_t n = 0; n < state.amplitudes.size(); ++n)
    m += double(n) * std::norm(state.amplitudes[n]);
  return m;
}

double var_n(const FieldState& state) {
  double m = 0.0, m2 = 0.0;
  for (size_t n = 0; n < state.amplitudes.size(); ++n) {
    const double p = std::norm(state.amplitudes[n]);
    m += double(n) * p;
    m2 += double(n) * double(n) * p;
  }
  return std::max(m2 - m * m, 0.0);
}

double delta_n(const FieldState& state) { return std::sqrt(var_n(state)); }

std::vector<double> pn(const FieldState& state) {
  std::vector<double> p(state.amplitudes.size());
  for (size_t n = 0; n < p.size(); ++n) p[n] = std::norm(state.amplitudes[n]);
  return p;
}

double mean_n(const FieldDensity& rho) {
  double m = 0.0;
  for (int n = 0; n <= rho.n_max; ++n) m += double(n) * rho.at(n, n).real();
  return m;
}

double delta_n(const FieldDensity& rho) {
  double m = 0.0, m2 = 0.0;
  for (int n = 0; n <= rho.n_max; ++n) {
    const double p = rho.at(n, n).real();
    m += double(n) * p;
    m2 += double(n) * double(n) * p;
  }
  return std::sqrt(std::max(m2 - m * m, 0.0));
}

}  // namespace cavityfock
