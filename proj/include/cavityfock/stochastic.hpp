#pragma once
#include <cstdint>
#include <random>

#include "cavityfock/errors.hpp"

namespace cavityfock {

enum class SpreadDistribution { uniform, gaussian };

/// Timing statistics of the atomic beam. spread is a half-width in uniform
/// mode and a standard deviation in gaussian mode (note: the rms spread
/// language in the experiments refers to photon number, not to tau).
struct TimingModel {
  double tau_mean = 1.0;     // > 0
  double spread = 0.0;       // >= 0; uniform additionally requires spread < tau_mean
  double length_ratio = 1.0; // T_final / tau > 0, set by the apparatus geometry
  SpreadDistribution distribution = SpreadDistribution::uniform;

  void validate() const;  // throws InvalidModel
};

/// Correlated per-atom draw: the same velocity sets the cavity transit and
/// the detection-pulse duration, so t_final_pulse = length_ratio * tau
/// holds to the last bit.
struct InteractionSample {
  double tau = 0.0;
  double t_final_pulse = 0.0;
};

/// Deterministic random stream. The raw engine is std::mt19937_64 (whose
/// output sequence the standard pins down); uniform and gaussian variates
/// are derived with fixed arithmetic here instead of std::*_distribution,
/// which the standard leaves implementation-defined. Identical
/// (seed, draw index) therefore give identical samples on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(scramble(seed)) {}

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform01() { return (engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  /// Box-Muller; consumes two variates per call.
  double normal(double mean, double sigma);

  static std::uint64_t scramble(std::uint64_t x);

 private:
  std::mt19937_64 engine_;
};

/// Draw one atom's (tau, T_final) pair: tau uniform on
/// [tau_mean - spread, tau_mean + spread] or gaussian truncated at tau > 0,
/// and T_final = length_ratio * tau exactly.
InteractionSample sample_times(const TimingModel& model, Rng& rng);

/// Ablation control: tau and T_final drawn from independent transit draws,
/// breaking the velocity correlation while keeping both marginals.
InteractionSample uncorrelated_sample_times(const TimingModel& model, Rng& rng);

}  // namespace cavityfock
