// Command-line front end: run presets or config files, write CSV results.
#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cavityfock/config.hpp"
#include "cavityfock/io.hpp"

namespace fs = std::filesystem;
using namespace cavityfock;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

struct CommonArgs {
  std::string config_path;
  std::string preset;
  std::string out_dir = ".";
  std::int64_t seed = -1;  // -1 = keep the config's seed
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "experiment config file");
  cmd->add_option("--preset", args.preset,
                  "built-in preset (fig1, fig2-fixed, fig2-small, fig2-large)");
  cmd->add_option("--out", args.out_dir, "output directory");
  cmd->add_option("--seed", args.seed, "override the base seed");
  cmd->add_option("--set", args.overrides, "override key=value (repeatable)");
}

ExperimentConfig load_config(const CommonArgs& args) {
  ExperimentConfig config;
  if (!args.preset.empty() && !args.config_path.empty())
    throw ValidationError("give either --config or --preset, not both");
  if (!args.preset.empty()) {
    config = preset_config(args.preset);
  } else if (!args.config_path.empty()) {
    std::ifstream in(args.config_path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot read '" + args.config_path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    config = parse_config(text.str());
  } else {
    throw ValidationError("one of --config or --preset is required");
  }
  for (const auto& kv : args.overrides) apply_override(config, kv);
  if (args.seed >= 0) config.seed = std::uint64_t(args.seed);
  config.validate();
  return config;
}

void ensure_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::ios_base::failure("cannot create '" + dir + "': " + ec.message());
}

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

int report_fault(const TrajectoryResult& result) {
  if (result.fault == Fault::none) return kExitOk;
  std::cerr << "numerical fault (" << to_string(result.fault) << ") at atom "
            << result.fault_step << ": " << result.fault_message << "\n";
  return kExitNumerical;
}

int cmd_run(const CommonArgs& args) {
  const ExperimentConfig config = load_config(args);
  ensure_out_dir(args.out_dir);
  const TrajectoryResult result = run_trajectory(config);
  write_file(join(args.out_dir, "trajectory.csv"), trajectory_csv(result));
  write_file(join(args.out_dir, "final_pn.csv"), final_pn_csv(result.final_pn));
  std::cout << "atoms: " << result.records.size() << "\n";
  if (!result.records.empty()) {
    const StepRecord& last = result.records.back();
    std::cout << "final mean_n: " << format_double(last.mean_n)
              << "  delta_n: " << format_double(last.delta_n)
              << "  cum_log_success: " << format_double(last.cum_log_success) << "\n";
  }
  std::cout << "converged: " << (result.converged ? "yes" : "no");
  if (result.converged_n) std::cout << " (n = " << *result.converged_n << ")";
  std::cout << "\n";
  return report_fault(result);
}

int cmd_ensemble(const CommonArgs& args, int n_seeds) {
  const ExperimentConfig config = load_config(args);
  ensure_out_dir(args.out_dir);
  const EnsembleSummary summary = run_ensemble(config, n_seeds);
  write_file(join(args.out_dir, "summary.csv"), summary_csv(summary));
  std::cout << "converged: " << summary.n_converged << "/" << summary.rows.size()
            << "\n";
  for (const auto& [n, count] : summary.converged_n_counts)
    std::cout << "  n = " << n << ": " << count << " seeds\n";
  std::cout << "mean cum_log_success: " << format_double(summary.mean_cum_log_success)
            << "\n";
  return kExitOk;
}

int cmd_compare_nsm(const CommonArgs& args) {
  ExperimentConfig config = load_config(args);
  if (config.scheme == Scheme::nsm)
    throw ValidationError("compare-nsm needs a conditional scheme to compare against");
  config.selection = Selection::forced_postselect;  // keeps the timing streams aligned
  ensure_out_dir(args.out_dir);
  const TrajectoryResult cm = run_trajectory(config);
  ExperimentConfig nsm_config = config;
  nsm_config.scheme = Scheme::nsm;
  const TrajectoryResult nsm = run_trajectory(nsm_config);
  write_file(join(args.out_dir, "compare.csv"), compare_csv(cm, nsm));
  write_file(join(args.out_dir, "cm_final_pn.csv"), final_pn_csv(cm.final_pn));
  write_file(join(args.out_dir, "nsm_final_pn.csv"), final_pn_csv(nsm.final_pn));
  if (!cm.records.empty() && !nsm.records.empty())
    std::cout << "final delta_n  cm: " << format_double(cm.records.back().delta_n)
              << "  nsm: " << format_double(nsm.records.back().delta_n) << "\n";
  const int cm_status = report_fault(cm);
  const int nsm_status = report_fault(nsm);
  return cm_status != kExitOk ? cm_status : nsm_status;
}

int cmd_presets() {
  for (const auto& p : preset_list())
    std::cout << p.name << "\t" << p.description << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cavity Fock-state preparation by conditional measurements"};
  app.require_subcommand(1);

  CommonArgs run_args, ens_args, cmp_args;
  int n_seeds = 20;

  CLI::App* run = app.add_subcommand("run", "run one trajectory, write CSVs");
  add_common(run, run_args);
  CLI::App* ens = app.add_subcommand("ensemble", "run a multi-seed ensemble");
  add_common(ens, ens_args);
  ens->add_option("--seeds", n_seeds, "number of seeds")->check(CLI::PositiveNumber);
  CLI::App* cmp = app.add_subcommand(
      "compare-nsm", "run the conditional scheme and the non-selective channel "
                     "on one timing stream");
  add_common(cmp, cmp_args);
  app.add_subcommand("presets", "list built-in presets");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_args);
    if (ens->parsed()) return cmd_ensemble(ens_args, n_seeds);
    if (cmp->parsed()) return cmd_compare_nsm(cmp_args);
    return cmd_presets();
  } catch (const ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ValidationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InvalidConfig& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InvalidModel& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NullOutcome& e) {
    std::cerr << "numerical fault: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const TruncationTooSmall& e) {
    std::cerr << "numerical fault: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  }
}
