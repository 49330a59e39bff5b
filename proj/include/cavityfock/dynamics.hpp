#pragma once
#include <vector>

#include "cavityfock/core_state.hpp"

namespace cavityfock {

/// Atom-cavity coupling g and one transit's interaction time tau.
struct CouplingParams {
  double g = 1.0;    // > 0
  double tau = 0.0;  // >= 0
};

/// Result of one conditional measurement: the renormalized post-selected
/// field and the success probability of that outcome.
struct CmResult {
  FieldState field;
  double success_prob = 0.0;
};

/// Floor on measurement-outcome probability; below it the projection is
/// treated as a (near-)impossible outcome and NullOutcome is thrown.
inline constexpr double kNullOutcomeEps = 1e-14;

/// One atom transit followed by detection of the atom in atom_out, for an
/// atom injected in atom_in. Implements the single-atom update
///
///   d'_n = [a_i conj(a_f) C_n + b_i conj(b_f) C_{n-1}] d_n
///          - i a_i conj(b_f) S_{n-1} d_{n-1}
///          - i b_i conj(a_f) S_n d_{n+1}
///
/// with C_n = cos(g tau sqrt(n+1)), S_n = sin(g tau sqrt(n+1)), and the
/// boundary convention d_{-1} = d_{n_max+1} = 0 (C_{-1} = 1). The result is
/// renormalized; success_prob is the squared norm of the raw projection.
CmResult cm_step(const FieldState& field, const AtomState& atom_in,
                 const AtomState& atom_out, const CouplingParams& cpl,
                 double null_eps = kNullOutcomeEps);

/// Specialization of cm_step to atoms injected in |e>; the path taken by
/// all experiment schemes.
CmResult excited_cm_step(const FieldState& field, const AtomState& atom_out,
                         const CouplingParams& cpl, double null_eps = kNullOutcomeEps);

/// Embed an atom-field product state as a JointState.
JointState embed_product(const AtomState& atom, const FieldState& field);

/// Exact resonant Jaynes-Cummings rotation in the interaction picture.
/// Each block {|e,n>, |g,n+1>} mixes by cos(g tau sqrt(n+1)) and
/// -i sin(g tau sqrt(n+1)); |g,0> is stationary. The top boundary mirrors
/// the d_{n_max+1} = 0 convention: the phantom |g,n_max+1> amplitude is
/// dropped, so norm is preserved exactly only while the top level is empty.
JointState jc_joint_evolve(const JointState& joint, const CouplingParams& cpl);

/// Project the atom out of a JointState onto atom_out:
/// field amplitudes conj(alpha) e_branch + conj(beta) g_branch.
/// Together with jc_joint_evolve this is the brute-force route that must
/// agree with cm_step; the equivalence is the oracle for the recurrence.
CmResult project_atom(const JointState& joint, const AtomState& atom_out,
                      double null_eps = kNullOutcomeEps);

/// Non-selective counterpart of cm_step: the atomic outcome is discarded,
///   rho' = K_e rho K_e^+ + K_g rho K_g^+,
/// where K_e and K_g are the cm_step linear maps with final state |e> and
/// |g> respectively. Trace-preserving by construction (up to tail mass);
/// no renormalization is applied.
FieldDensity nsm_step(const FieldDensity& rho, const AtomState& atom_in,
                      const CouplingParams& cpl);

/// Interference-scheme per-step factor cos(Omega T/2 - g tau sqrt(n+1)).
/// Valid as an estimate of |d'_n / d_n| near phase = -pi/2 while the
/// distribution is smooth; diagnostics only, never used in the evolution.
double approx_cm_factor(int n, const PulseParams& pulse, const CouplingParams& cpl);

/// Critical interaction-time spread pi / (2 g sqrt(n+1)) beyond which the
/// elastic and inelastic schemes lose convergence: the gap between the
/// trapping and anti-trapping times at the n -> n+1 boundary.
double critical_spread(double g, int n);

/// Interaction times m pi / (g sqrt(n+1)), m = 1..count, at which
/// sin(g tau sqrt(n+1)) = 0 so amplitude flow across the n -> n+1
/// boundary vanishes.
std::vector<double> trapping_times(double g, int n, int count);

}  // namespace cavityfock
