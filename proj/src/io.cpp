#include "cavityfock/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace cavityfock {

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string trajectory_csv(const TrajectoryResult& result) {
  std::ostringstream out;
  out << "k,mean_n,delta_n,p_k,cum_log_success,tau_k\n";
  for (const auto& r : result.records)
    out << r.k << ',' << format_double(r.mean_n) << ',' << format_double(r.delta_n)
        << ',' << format_double(r.p_k) << ',' << format_double(r.cum_log_success)
        << ',' << format_double(r.tau_k) << '\n';
  return out.str();
}

std::string final_pn_csv(const std::vector<double>& pn) {
  std::ostringstream out;
  out << "n,p\n";
  for (size_t n = 0; n < pn.size(); ++n)
    out << n << ',' << format_double(pn[n]) << '\n';
  return out.str();
}

std::string summary_csv(const EnsembleSummary& summary) {
  std::ostringstream out;
  out << "seed,converged,converged_n,final_delta_n,cum_log_success\n";
  for (const auto& row : summary.rows) {
    out << row.seed << ',' << (row.converged ? 1 : 0) << ',';
    if (row.converged_n) out << *row.converged_n;
    out << ',' << format_double(row.final_delta_n) << ','
        << format_double(row.cum_log_success) << '\n';
  }
  return out.str();
}

std::string compare_csv(const TrajectoryResult& cm, const TrajectoryResult& nsm) {
  std::ostringstream out;
  out << "k,tau_k,cm_mean_n,cm_delta_n,cm_p_k,nsm_mean_n,nsm_delta_n\n";
  const size_t rows = std::max(cm.records.size(), nsm.records.size());
  for (size_t i = 0; i < rows; ++i) {
    const bool has_cm = i < cm.records.size();
    const bool has_nsm = i < nsm.records.size();
    const double tau = has_cm ? cm.records[i].tau_k
                              : (has_nsm ? nsm.records[i].tau_k : 0.0);
    out << (i + 1) << ',' << format_double(tau) << ',';
    if (has_cm)
      out << format_double(cm.records[i].mean_n) << ','
          << format_double(cm.records[i].delta_n) << ','
          << format_double(cm.records[i].p_k);
    else
      out << ",,";
    out << ',';
    if (has_nsm)
      out << format_double(nsm.records[i].mean_n) << ','
          << format_double(nsm.records[i].delta_n);
    else
      out << ',';
    out << '\n';
  }
  return out.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::ios_base::failure("write to '" + path + "' failed");
}

}  // namespace cavityfock
