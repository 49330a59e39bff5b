#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cavityfock/core_state.hpp"
#include "cavityfock/dynamics.hpp"
#include "cavityfock/stochastic.hpp"

namespace cavityfock {

/// Detection scheme per atom. All schemes inject atoms in |e>.
///   elastic_ee       detect |e>   (diagonal reweighting, no photon kept)
///   inelastic_eg     detect |g>   (one photon deposited per atom)
///   interference_epg detect the pulse-defined superposition of |e>,|g>
///   nsm              discard the outcome (density-matrix channel)
enum class Scheme { elastic_ee, inelastic_eg, interference_epg, nsm };

enum class Selection { forced_postselect, born_sampled };
enum class Correlation { correlated, uncorrelated };

/// Full parameterization of one run. Pulse duration is not stored here: it
/// comes from each atom's sampled transit via timing.length_ratio.
struct ExperimentConfig {
  double g = 1.0;
  Complex alpha_init = 0.0;
  int n_target = 0;
  Scheme scheme = Scheme::elastic_ee;
  TimingModel timing;
  double final_pulse_omega = 0.0;  // 0 = derive from resolve_target_pulse
  double final_pulse_phase = -1.5707963267948966;  // -pi/2
  int n_atoms = 1;
  int n_max = 0;  // 0 = default_n_max(alpha_init)
  std::uint64_t seed = 1;
  Selection selection = Selection::forced_postselect;
  Correlation correlation = Correlation::correlated;
  double tail_threshold = 1e-12;

  void validate() const;  // throws InvalidConfig
  int resolved_n_max() const;
};

/// Detection-pulse Rabi frequency for the interference scheme:
/// Omega = 2 g sqrt(n_target + 1) / length_ratio, which makes the per-step
/// factor argument Omega T_k/2 - g tau_k sqrt(n+1) vanish identically at
/// n = n_target for every sampled velocity (T_k = length_ratio tau_k).
/// n_target is the Fock index the run is meant to keep.
double resolve_target_pulse(const ExperimentConfig& config);

/// Per-atom statistics row.
struct StepRecord {
  int k = 0;
  double mean_n = 0.0;
  double delta_n = 0.0;
  double p_k = 1.0;
  double cum_log_success = 0.0;  // sum of log p_k, audit of post-selection cost
  double tau_k = 0.0;
};

enum class Fault { none, null_outcome, truncation };

struct TrajectoryResult {
  std::vector<StepRecord> records;
  std::vector<double> final_pn;
  bool converged = false;
  std::optional<int> converged_n;
  Fault fault = Fault::none;
  int fault_step = -1;
  std::string fault_message;
  /// Born-sampled mode only: one flag per atom, true when the orthogonal
  /// outcome occurred.
  std::vector<std::uint8_t> flipped_outcomes;
};

/// Converged iff max_n final_pn >= 0.99 and delta_n <= 0.1 over the whole
/// last 10% of recorded steps; returns the argmax index when converged.
std::pair<bool, std::optional<int>> convergence_detector(
    const std::vector<StepRecord>& records, const std::vector<double>& final_pn);

/// Run one trajectory: initial coherent state, then per atom sample times,
/// build the final atomic state from the scheme, apply the conditional (or
/// non-selective) update, and append a StepRecord. Fully determined by
/// (config, seed); faults are recorded and end the trajectory early.
TrajectoryResult run_trajectory(const ExperimentConfig& config);

struct EnsembleSeedRow {
  std::uint64_t seed = 0;
  bool converged = false;
  std::optional<int> converged_n;
  double final_delta_n = 0.0;
  double cum_log_success = 0.0;
  Fault fault = Fault::none;
};

struct EnsembleSummary {
  std::vector<EnsembleSeedRow> rows;
  std::vector<double> median_delta_n;      // per atom index, across completed seeds
  std::vector<std::pair<int, int>> converged_n_counts;  // (n, count), ascending n
  double mean_cum_log_success = 0.0;       // over completed trajectories
  int n_converged = 0;
};

/// Independent trajectories with derived seeds (base_seed xor index),
/// reduced into per-seed rows, the median delta_n trace, the distribution
/// of converged indices and the mean post-selection cost. Per-trajectory
/// faults are aggregated, never fatal.
EnsembleSummary run_ensemble(const ExperimentConfig& config, int n_seeds);

const char* to_string(Scheme s);
const char* to_string(Selection s);
const char* to_string(Correlation c);
const char* to_string(SpreadDistribution d);
const char* to_string(Fault f);

}  // namespace cavityfock
