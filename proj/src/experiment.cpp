#include "cavityfock/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <thread>

namespace cavityfock {

void ExperimentConfig::validate() const {
  if (!(g > 0.0)) throw InvalidConfig("g must be positive");
  if (n_atoms < 1) throw InvalidConfig("n_atoms must be at least 1");
  if (n_target < 0) throw InvalidConfig("n_target must be non-negative");
  if (n_max < 0) throw InvalidConfig("n_max must be non-negative (0 = automatic)");
  if (!(tail_threshold > 0.0)) throw InvalidConfig("tail_threshold must be positive");
  try {
    timing.validate();
  } catch (const InvalidModel& e) {
    throw InvalidConfig(e.what());
  }
  if (resolved_n_max() < 2) throw InvalidConfig("truncation window too small");
  if (scheme == Scheme::interference_epg && final_pulse_omega < 0.0)
    throw InvalidConfig("final_pulse_omega must be non-negative");
}

int ExperimentConfig::resolved_n_max() const {
  return n_max > 0 ? n_max : default_n_max(alpha_init);
}

double resolve_target_pulse(const ExperimentConfig& config) {
  if (config.scheme != Scheme::interference_epg)
    throw InvalidConfig("target pulse closure applies to the interference scheme only");
  if (!(config.g > 0.0) || !(config.timing.length_ratio > 0.0))
    throw InvalidConfig("resolve_target_pulse needs positive g and length_ratio");
  // Omega T_k/2 - g tau_k sqrt(n_target+1) == 0 for every velocity, since
  // T_k = length_ratio * tau_k cancels the sampled transit time.
  return 2.0 * config.g * std::sqrt(double(config.n_target + 1)) /
         config.timing.length_ratio;
}

std::pair<bool, std::optional<int>> convergence_detector(
    const std::vector<StepRecord>& records, const std::vector<double>& final_pn) {
  if (records.empty() || final_pn.empty()) return {false, std::nullopt};
  const auto peak = std::max_element(final_pn.begin(), final_pn.end());
  if (*peak < 0.99) return {false, std::nullopt};
  const size_t window = std::max<size_t>(1, records.size() / 10);
  for (size_t i = records.size() - window; i < records.size(); ++i)
    if (records[i].delta_n > 0.1) return {false, std::nullopt};
  return {true, int(peak - final_pn.begin())};
}

namespace {

AtomState scheme_atom_out(const ExperimentConfig& config, double omega,
                          const InteractionSample& sample) {
  switch (config.scheme) {
    case Scheme::elastic_ee:
      return AtomState::excited();
    case Scheme::inelastic_eg:
      return AtomState::ground();
    case Scheme::interference_epg:
      return prepare_atom({omega, sample.t_final_pulse, config.final_pulse_phase});
    default:
      return AtomState::excited();
  }
}

}  // namespace

TrajectoryResult run_trajectory(const ExperimentConfig& config) {
  config.validate();
  const int n_max = config.resolved_n_max();
  const double omega = (config.scheme == Scheme::interference_epg &&
                        config.final_pulse_omega == 0.0)
                           ? resolve_target_pulse(config)
                           : config.final_pulse_omega;

  TrajectoryResult result;
  result.records.reserve(config.n_atoms);
  Rng rng(config.seed);

  FieldState field;
  FieldDensity rho;
  const bool density_path = (config.scheme == Scheme::nsm);
  try {
    field = coherent_state(config.alpha_init, n_max, config.tail_threshold);
  } catch (const TruncationTooSmall& e) {
    result.fault = Fault::truncation;
    result.fault_step = 0;
    result.fault_message = e.what();
    return result;
  }
  if (density_path) rho = FieldDensity::from_pure(field);

  double cum_log = 0.0;
  for (int k = 1; k <= config.n_atoms; ++k) {
    InteractionSample sample =
        (config.correlation == Correlation::correlated)
            ? sample_times(config.timing, rng)
            : uncorrelated_sample_times(config.timing, rng);
    const CouplingParams cpl{config.g, sample.tau};
    StepRecord rec;
    rec.k = k;
    rec.tau_k = sample.tau;
    try {
      if (density_path) {
        rho = nsm_step(rho, AtomState::excited(), cpl);
        rec.p_k = 1.0;  // nothing is discarded
        rec.mean_n = mean_n(rho);
        rec.delta_n = delta_n(rho);
      } else {
        const AtomState atom_out = scheme_atom_out(config, omega, sample);
        if (config.selection == Selection::forced_postselect) {
          CmResult r = excited_cm_step(field, atom_out, cpl);
          rec.p_k = r.success_prob;
          field = std::move(r.field);
        } else {
          // Born-sampled: realize the outcome with its Born probability and
          // project onto whichever occurred.
          double p_kept = 0.0;
          bool kept_possible = true;
          CmResult kept;
          try {
            kept = excited_cm_step(field, atom_out, cpl);
            p_kept = kept.success_prob;
          } catch (const NullOutcome&) {
            kept_possible = false;
          }
          // one outcome draw per atom, consumed even for impossible branches
          const bool keep = rng.uniform01() < p_kept && kept_possible;
          if (keep) {
            rec.p_k = p_kept;
            field = std::move(kept.field);
            result.flipped_outcomes.push_back(0);
          } else {
            CmResult flip = excited_cm_step(field, atom_out.orthogonal(), cpl);
            rec.p_k = flip.success_prob;
            field = std::move(flip.field);
            result.flipped_outcomes.push_back(1);
          }
        }
        rec.mean_n = mean_n(field);
        rec.delta_n = delta_n(field);
      }
    } catch (const NullOutcome& e) {
      result.fault = Fault::null_outcome;
      result.fault_step = k;
      result.fault_message = e.what();
      break;
    } catch (const TruncationTooSmall& e) {
      result.fault = Fault::truncation;
      result.fault_step = k;
      result.fault_message = e.what();
      break;
    }
    cum_log += std::log(rec.p_k);
    rec.cum_log_success = cum_log;
    result.records.push_back(rec);
  }

  result.final_pn = density_path ? rho.diagonal() : pn(field);
  if (result.fault == Fault::none) {
    auto [conv, n] = convergence_detector(result.records, result.final_pn);
    result.converged = conv;
    result.converged_n = n;
  }
  return result;
}

EnsembleSummary run_ensemble(const ExperimentConfig& config, int n_seeds) {
  if (n_seeds < 1) throw InvalidConfig("n_seeds must be at least 1");
  config.validate();

  std::vector<TrajectoryResult> trajectories(n_seeds);
  std::vector<std::uint64_t> seeds(n_seeds);
  for (int i = 0; i < n_seeds; ++i)
    seeds[i] = config.seed ^ static_cast<std::uint64_t>(i);

  // independent trajectories; the reduction below is the only join point
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < n_seeds; i = next.fetch_add(1)) {
      ExperimentConfig c = config;
      c.seed = seeds[i];
      trajectories[i] = run_trajectory(c);
    }
  };
  const unsigned n_threads =
      std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                         static_cast<unsigned>(n_seeds));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  EnsembleSummary summary;
  summary.rows.resize(n_seeds);
  std::map<int, int> counts;
  double cum_sum = 0.0;
  int completed = 0;
  size_t longest = 0;
  for (int i = 0; i < n_seeds; ++i) {
    const TrajectoryResult& tr = trajectories[i];
    EnsembleSeedRow& row = summary.rows[i];
    row.seed = seeds[i];
    row.converged = tr.converged;
    row.converged_n = tr.converged_n;
    row.fault = tr.fault;
    row.final_delta_n = tr.records.empty() ? 0.0 : tr.records.back().delta_n;
    row.cum_log_success = tr.records.empty() ? 0.0 : tr.records.back().cum_log_success;
    if (tr.converged) {
      ++summary.n_converged;
      if (tr.converged_n) ++counts[*tr.converged_n];
    }
    if (tr.fault == Fault::none) {
      cum_sum += row.cum_log_success;
      ++completed;
    }
    longest = std::max(longest, tr.records.size());
  }
  summary.mean_cum_log_success = completed ? cum_sum / completed : 0.0;
  summary.converged_n_counts.assign(counts.begin(), counts.end());

  summary.median_delta_n.resize(longest);
  std::vector<double> column;
  for (size_t k = 0; k < longest; ++k) {
    column.clear();
    for (const auto& tr : trajectories)
      if (k < tr.records.size()) column.push_back(tr.records[k].delta_n);
    std::sort(column.begin(), column.end());
    const size_t m = column.size();
    summary.median_delta_n[k] =
        (m % 2 == 1) ? column[m / 2] : 0.5 * (column[m / 2 - 1] + column[m / 2]);
  }
  return summary;
}

const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::elastic_ee: return "elastic_ee";
    case Scheme::inelastic_eg: return "inelastic_eg";
    case Scheme::interference_epg: return "interference_epg";
    case Scheme::nsm: return "nsm";
  }
  return "?";
}

const char* to_string(Selection s) {
  return s == Selection::forced_postselect ? "forced_postselect" : "born_sampled";
}

const char* to_string(Correlation c) {
  return c == Correlation::correlated ? "correlated" : "uncorrelated";
}

const char* to_string(SpreadDistribution d) {
  return d == SpreadDistribution::uniform ? "uniform" : "gaussian";
}

const char* to_string(Fault f) {
  switch (f) {
    case Fault::none: return "none";
    case Fault::null_outcome: return "null_outcome";
    case Fault::truncation: return "truncation";
  }
  return "?";
}

}  // namespace cavityfock
