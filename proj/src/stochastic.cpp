#include "cavityfock/stochastic.hpp"

#include <cmath>
#include <numbers>

namespace cavityfock {

void TimingModel::validate() const {
  if (!(tau_mean > 0.0)) throw InvalidModel("tau_mean must be positive");
  if (!(spread >= 0.0)) throw InvalidModel("spread must be non-negative");
  if (!(length_ratio > 0.0)) throw InvalidModel("length_ratio must be positive");
  if (distribution == SpreadDistribution::uniform && spread > 0.0 &&
      spread >= tau_mean)
    throw InvalidModel("uniform spread must stay below tau_mean (no negative times)");
}

std::uint64_t Rng::scramble(std::uint64_t x) {
  // splitmix64 finalizer; decorrelates nearby seeds before engine init
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double Rng::normal(double mean, double sigma) {
  // Box-Muller, fixed arithmetic for cross-platform reproducibility
  double u1 = uniform01();
  while (u1 <= 0.0) u1 = uniform01();
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  return mean + sigma * r * std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

double draw_tau(const TimingModel& model, Rng& rng) {
  if (model.spread == 0.0) return model.tau_mean;
  if (model.distribution == SpreadDistribution::uniform)
    return rng.uniform(model.tau_mean - model.spread, model.tau_mean + model.spread);
  // gaussian truncated at tau > 0
  double tau = rng.normal(model.tau_mean, model.spread);
  while (!(tau > 0.0)) tau = rng.normal(model.tau_mean, model.spread);
  return tau;
}

}  // namespace

InteractionSample sample_times(const TimingModel& model, Rng& rng) {
  model.validate();
  const double tau = draw_tau(model, rng);
  return {tau, model.length_ratio * tau};
}

InteractionSample uncorrelated_sample_times(const TimingModel& model, Rng& rng) {
  model.validate();
  const double tau = draw_tau(model, rng);
  const double tau_independent = draw_tau(model, rng);
  return {tau, model.length_ratio * tau_independent};
}

}  // namespace cavityfock
