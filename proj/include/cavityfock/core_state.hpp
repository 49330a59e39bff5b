#pragma once
#include <complex>
#include <vector>

#include "cavityfock/errors.hpp"

namespace cavityfock {

using Complex = std::complex<double>;

/// Pure state of the cavity mode over the truncated Fock basis |0>..|n_max>.
///
/// Invariants (enforced where states are produced, checked by the tail
/// guard during evolution):
///   - sum_n |amplitudes[n]|^2 == 1 within 1e-10 after every normalization
///   - |d[n_max]|^2 + |d[n_max-1]|^2 stays below tail_threshold; a
///     violation throws TruncationTooSmall rather than silently clipping.
struct FieldState {
  std::vector<Complex> amplitudes;  // index = photon number
  int n_max = 0;
  double tail_threshold = 1e-12;

  double norm_sq() const;
  double tail_mass() const;
  void normalize();
  void check_tail() const;  // throws TruncationTooSmall
};

/// Internal state of one two-level atom: alpha |e> + beta |g>.
/// |alpha|^2 + |beta|^2 == 1 within 1e-12.
struct AtomState {
  Complex alpha;  // excited amplitude
  Complex beta;   // ground amplitude

  static AtomState excited() { return {1.0, 0.0}; }
  static AtomState ground() { return {0.0, 1.0}; }
  /// Orthogonal partner (-conj(beta), conj(alpha)); together they form the
  /// measurement basis used by Born-sampled selection.
  AtomState orthogonal() const;
  double norm_sq() const;
};

/// Mixed state of the cavity mode, used by the non-selective channel.
/// Hermitian, trace one, stored dense row-major over 0..n_max.
struct FieldDensity {
  std::vector<Complex> matrix;  // (n_max+1)^2 entries, row-major
  int n_max = 0;
  double tail_threshold = 1e-12;

  Complex& at(int i, int j) { return matrix[static_cast<size_t>(i) * (n_max + 1) + j]; }
  const Complex& at(int i, int j) const {
    return matrix[static_cast<size_t>(i) * (n_max + 1) + j];
  }
  double trace_real() const;
  double hermiticity_error() const;
  std::vector<double> diagonal() const;
  static FieldDensity from_pure(const FieldState& psi);
};

/// Entangled atom-field state: amplitudes of |e,n> and |g,n>.
struct JointState {
  std::vector<Complex> e_branch;
  std::vector<Complex> g_branch;
  int n_max = 0;

  double norm_sq() const;
};

/// Parameters of one resonant classical pulse acting on an atom.
struct PulseParams {
  double rabi_frequency = 0.0;  // Omega >= 0, rad/time
  double duration = 0.0;        // T >= 0
  double phase = 0.0;           // phi, rad
};

/// Default truncation bound: ceil(|alpha|^2 + 8 |alpha| + 20). Leaves
/// headroom above the Poisson peak for diffusion during long runs.
int default_n_max(Complex alpha_amp);

/// Coherent state exp(-|a|^2/2) sum_n a^n/sqrt(n!) |n>, renormalized over
/// the truncated window. Throws TruncationTooSmall when the analytic tail
/// beyond n_max exceeds tail_threshold.
///
/// The global phase convention takes the stored amplitudes exactly as the
/// analytic coefficients; with a real positive alpha_amp (the convention
/// used by every preset, standing in for phase-locked preparation fields)
/// all amplitudes are real positive. Every observable computed here is
/// insensitive to a global phase of alpha_amp.
FieldState coherent_state(Complex alpha_amp, int n_max, double tail_threshold = 1e-12);

/// Atom leaving a resonant pulse that started from |e>:
/// alpha = cos(Omega T / 2), beta = sin(Omega T / 2) e^{i phi}.
AtomState prepare_atom(const PulseParams& pulse);

double mean_n(const FieldState& state);
double var_n(const FieldState& state);
/// RMS photon-number spread sqrt(<n^2> - <n>^2).
double delta_n(const FieldState& state);
/// Photon-number distribution |d_n|^2.
std::vector<double> pn(const FieldState& state);

double mean_n(const FieldDensity& rho);
double delta_n(const FieldDensity& rho);

}  // namespace cavityfock
