#pragma once
#include <string>
#include <vector>

#include "cavityfock/experiment.hpp"

namespace cavityfock {

/// Shortest round-trip decimal representation of a double (std::to_chars).
/// Keeps CSV output byte-deterministic for a fixed (config, seed).
std::string format_double(double value);

std::string trajectory_csv(const TrajectoryResult& result);
std::string final_pn_csv(const std::vector<double>& pn);
std::string summary_csv(const EnsembleSummary& summary);
/// CM and NSM statistics driven by one shared timing stream, side by side.
std::string compare_csv(const TrajectoryResult& cm, const TrajectoryResult& nsm);

/// Write text to path; throws std::ios_base::failure on I/O errors.
void write_file(const std::string& path, const std::string& text);

}  // namespace cavityfock
