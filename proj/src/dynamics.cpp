#include "cavityfock/dynamics.hpp"

#include <cmath>
#include <numbers>

namespace cavityfock {

namespace {

constexpr Complex kMinusI{0.0, -1.0};

// Rabi half-angle tables C_n = cos(g tau sqrt(n+1)), S_n = sin(...),
// n = 0..n_max. C_{-1} = 1 and S_{-1} = 0 by the boundary convention.
struct RabiTable {
  std::vector<double> c, s;
  RabiTable(int n_max, const CouplingParams& cpl) : c(n_max + 1), s(n_max + 1) {
    for (int n = 0; n <= n_max; ++n) {
      const double angle = cpl.g * cpl.tau * std::sqrt(double(n + 1));
      c[n] = std::cos(angle);
      s[n] = std::sin(angle);
    }
  }
};

// Unnormalized conditional-measurement map, the common kernel behind
// cm_step and the two Kraus branches of nsm_step.
void apply_cm_map(std::vector<Complex>& out, const std::vector<Complex>& in,
                  const AtomState& atom_in, const AtomState& atom_out,
                  const RabiTable& t) {
  const int n_max = static_cast<int>(in.size()) - 1;
  const Complex af = std::conj(atom_out.alpha);
  const Complex bf = std::conj(atom_out.beta);
  const Complex stay_e = atom_in.alpha * af;   // |e> survived, atom kept photon count
  const Complex stay_g = atom_in.beta * bf;    // |g> survived
  const Complex emit = kMinusI * atom_in.alpha * bf;   // e -> g, photon deposited
  const Complex absorb = kMinusI * atom_in.beta * af;  // g -> e, photon taken
  out.assign(in.size(), 0.0);
  for (int n = 0; n <= n_max; ++n) {
    const double c_prev = (n > 0) ? t.c[n - 1] : 1.0;
    Complex v = (stay_e * t.c[n] + stay_g * c_prev) * in[n];
    if (n > 0) v += emit * t.s[n - 1] * in[n - 1];
    if (n < n_max) v += absorb * t.s[n] * in[n + 1];
    out[n] = v;
  }
}

double vec_norm_sq(const std::vector<Complex>& v) {
  double s = 0.0;
  for (const auto& a : v) s += std::norm(a);
  return s;
}

}  // namespace

CmResult cm_step(const FieldState& field, const AtomState& atom_in,
                 const AtomState& atom_out, const CouplingParams& cpl,
                 double null_eps) {
  RabiTable t(field.n_max, cpl);
  CmResult result;
  result.field.n_max = field.n_max;
  result.field.tail_threshold = field.tail_threshold;
  apply_cm_map(result.field.amplitudes, field.amplitudes, atom_in, atom_out, t);
  result.success_prob = vec_norm_sq(result.field.amplitudes);
  if (result.success_prob < null_eps)
    throw NullOutcome("measurement outcome probability " +
                      format_sci(result.success_prob) + " below epsilon");
  result.field.normalize();
  result.field.check_tail();
  return result;
}

CmResult excited_cm_step(const FieldState& field, const AtomState& atom_out,
                         const CouplingParams& cpl, double null_eps) {
  return cm_step(field, AtomState::excited(), atom_out, cpl, null_eps);
}

JointState embed_product(const AtomState& atom, const FieldState& field) {
  JointState joint;
  joint.n_max = field.n_max;
  joint.e_branch.resize(field.amplitudes.size());
  joint.g_branch.resize(field.amplitudes.size());
  for (size_t n = 0; n < field.amplitudes.size(); ++n) {
    joint.e_branch[n] = atom.alpha * field.amplitudes[n];
    joint.g_branch[n] = atom.beta * field.amplitudes[n];
  }
  return joint;
}

JointState jc_joint_evolve(const JointState& joint, const CouplingParams& cpl) {
  JointState out = joint;
  // block {|e,n>, |g,n+1>} rotates by the Rabi half-angle g tau sqrt(n+1)
  for (int n = 0; n < joint.n_max; ++n) {
    const double angle = cpl.g * cpl.tau * std::sqrt(double(n + 1));
    const double c = std::cos(angle);
    const Complex ms{0.0, -std::sin(angle)};
    const Complex e_n = joint.e_branch[n];
    const Complex g_n1 = joint.g_branch[n + 1];
    out.e_branch[n] = c * e_n + ms * g_n1;
    out.g_branch[n + 1] = ms * e_n + c * g_n1;
  }
  // |g,0> is dark; |e,n_max> couples only to the discarded phantom level
  const double top = cpl.g * cpl.tau * std::sqrt(double(joint.n_max + 1));
  out.e_branch[joint.n_max] = std::cos(top) * joint.e_branch[joint.n_max];
  return out;
}

CmResult project_atom(const JointState& joint, const AtomState& atom_out,
                      double null_eps) {
  CmResult result;
  result.field.n_max = joint.n_max;
  result.field.amplitudes.resize(joint.e_branch.size());
  for (size_t n = 0; n < joint.e_branch.size(); ++n)
    result.field.amplitudes[n] = std::conj(atom_out.alpha) * joint.e_branch[n] +
                                 std::conj(atom_out.beta) * joint.g_branch[n];
  result.success_prob = vec_norm_sq(result.field.amplitudes);
  if (result.success_prob < null_eps)
    throw NullOutcome("projection onto the final atomic state has probability " +
                      format_sci(result.success_prob));
  result.field.normalize();
  return result;
}

FieldDensity nsm_step(const FieldDensity& rho, const AtomState& atom_in,
                      const CouplingParams& cpl) {
  const int dim = rho.n_max + 1;
  RabiTable t(rho.n_max, cpl);
  FieldDensity out;
  out.n_max = rho.n_max;
  out.tail_threshold = rho.tail_threshold;
  out.matrix.assign(rho.matrix.size(), 0.0);

  std::vector<Complex> col(dim), mapped(dim);
  std::vector<Complex> work(rho.matrix.size());
  const AtomState branches[2] = {AtomState::excited(), AtomState::ground()};
  for (const AtomState& branch : branches) {
    // K rho: map every column
    for (int j = 0; j < dim; ++j) {
      for (int i = 0; i < dim; ++i) col[i] = rho.at(i, j);
      apply_cm_map(mapped, col, atom_in, branch, t);
      for (int i = 0; i < dim; ++i) work[static_cast<size_t>(i) * dim + j] = mapped[i];
    }
    // (K rho) K^+ = (K (K rho)^+)^+
    for (int j = 0; j < dim; ++j) {
      for (int i = 0; i < dim; ++i)
        col[i] = std::conj(work[static_cast<size_t>(j) * dim + i]);
      apply_cm_map(mapped, col, atom_in, branch, t);
      for (int i = 0; i < dim; ++i)
        out.matrix[static_cast<size_t>(j) * dim + i] += std::conj(mapped[i]);
    }
  }
  double tail = out.at(rho.n_max, rho.n_max).real();
  if (rho.n_max >= 1) tail += out.at(rho.n_max - 1, rho.n_max - 1).real();
  if (tail >= rho.tail_threshold)
    throw TruncationTooSmall("density tail mass " + format_sci(tail) +
                             " exceeds threshold");
  return out;
}

double approx_cm_factor(int n, const PulseParams& pulse, const CouplingParams& cpl) {
  const double half_area = pulse.rabi_frequency * pulse.duration / 2.0;
  return std::cos(half_area - cpl.g * cpl.tau * std::sqrt(double(n + 1)));
}

double critical_spread(double g, int n) {
  return std::numbers::pi / (2.0 * g * std::sqrt(double(n + 1)));
}

std::vector<double> trapping_times(double g, int n, int count) {
  std::vector<double> times(count);
  for (int m = 1; m <= count; ++m)
    times[m - 1] = double(m) * std::numbers::pi / (g * std::sqrt(double(n + 1)));
  return times;
}

}  // namespace cavityfock
