#pragma once
#include <cstdio>
#include <stdexcept>
#include <string>

namespace cavityfock {

/// Scientific-notation rendering for error messages (std::to_string shows
/// sub-micro values as 0.000000).
inline std::string format_sci(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", value);
  return buf;
}

/// Base class for all simulation faults.
struct SimulationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The truncated Fock window cannot hold the state: tail mass at the top
/// two indices exceeded the configured threshold.
struct TruncationTooSmall : SimulationError {
  using SimulationError::SimulationError;
};

/// A conditional measurement outcome with probability below the configured
/// epsilon; renormalizing would amplify rounding noise into garbage.
struct NullOutcome : SimulationError {
  using SimulationError::SimulationError;
};

/// A TimingModel violating its invariants.
struct InvalidModel : SimulationError {
  using SimulationError::SimulationError;
};

/// An ExperimentConfig violating its invariants.
struct InvalidConfig : SimulationError {
  using SimulationError::SimulationError;
};

/// Config text that does not follow the key = value schema.
struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& what_)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what_),
        line(line_) {}
};

/// Config that parses but names an invalid value.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cavityfock
