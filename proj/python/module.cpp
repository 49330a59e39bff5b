#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cavityfock/config.hpp"
#include "cavityfock/core_state.hpp"
#include "cavityfock/dynamics.hpp"
#include "cavityfock/experiment.hpp"
#include "cavityfock/io.hpp"
#include "cavityfock/stochastic.hpp"

namespace py = pybind11;
using namespace cavityfock;

PYBIND11_MODULE(_cavityfock, m) {
  m.doc() = "Fock-state preparation in a lossless cavity by conditional "
            "measurements on sequentially injected two-level atoms";

  py::register_exception<TruncationTooSmall>(m, "TruncationTooSmall");
  py::register_exception<NullOutcome>(m, "NullOutcome");
  py::register_exception<InvalidModel>(m, "InvalidModel");
  py::register_exception<InvalidConfig>(m, "InvalidConfig");
  py::register_exception<ParseError>(m, "ConfigParseError");
  py::register_exception<ValidationError>(m, "ConfigValidationError");

  py::class_<FieldState>(m, "FieldState")
      .def_readonly("amplitudes", &FieldState::amplitudes)
      .def_readonly("n_max", &FieldState::n_max)
      .def("norm_sq", &FieldState::norm_sq)
      .def("tail_mass", &FieldState::tail_mass);

  py::class_<AtomState>(m, "AtomState")
      .def(py::init<Complex, Complex>(), py::arg("alpha"), py::arg("beta"))
      .def_readonly("alpha", &AtomState::alpha)
      .def_readonly("beta", &AtomState::beta)
      .def_static("excited", &AtomState::excited)
      .def_static("ground", &AtomState::ground)
      .def("orthogonal", &AtomState::orthogonal);

  py::class_<FieldDensity>(m, "FieldDensity")
      .def_readonly("n_max", &FieldDensity::n_max)
      .def("trace_real", &FieldDensity::trace_real)
      .def("hermiticity_error", &FieldDensity::hermiticity_error)
      .def("diagonal", &FieldDensity::diagonal)
      .def_static("from_pure", &FieldDensity::from_pure);

  py::class_<JointState>(m, "JointState")
      .def_readonly("e_branch", &JointState::e_branch)
      .def_readonly("g_branch", &JointState::g_branch)
      .def("norm_sq", &JointState::norm_sq);

  py::class_<PulseParams>(m, "PulseParams")
      .def(py::init([](double omega, double duration, double phase) {
             return PulseParams{omega, duration, phase};
           }),
           py::arg("rabi_frequency"), py::arg("duration"), py::arg("phase") = 0.0)
      .def_readwrite("rabi_frequency", &PulseParams::rabi_frequency)
      .def_readwrite("duration", &PulseParams::duration)
      .def_readwrite("phase", &PulseParams::phase);

  py::class_<CouplingParams>(m, "CouplingParams")
      .def(py::init([](double g, double tau) { return CouplingParams{g, tau}; }),
           py::arg("g"), py::arg("tau"))
      .def_readwrite("g", &CouplingParams::g)
      .def_readwrite("tau", &CouplingParams::tau);

  py::class_<CmResult>(m, "CmResult")
      .def_readonly("field", &CmResult::field)
      .def_readonly("success_prob", &CmResult::success_prob);

  m.def("default_n_max", &default_n_max, py::arg("alpha_amp"));
  m.def("coherent_state", &coherent_state, py::arg("alpha_amp"), py::arg("n_max"),
        py::arg("tail_threshold") = 1e-12);
  m.def("prepare_atom", &prepare_atom, py::arg("pulse"));
  m.def("mean_n", py::overload_cast<const FieldState&>(&mean_n));
  m.def("var_n", &var_n);
  m.def("delta_n", py::overload_cast<const FieldState&>(&delta_n));
  m.def("pn", &pn);

  m.def("cm_step", &cm_step, py::arg("field"), py::arg("atom_in"),
        py::arg("atom_out"), py::arg("cpl"), py::arg("null_eps") = kNullOutcomeEps);
  m.def("excited_cm_step", &excited_cm_step, py::arg("field"), py::arg("atom_out"),
        py::arg("cpl"), py::arg("null_eps") = kNullOutcomeEps);
  m.def("embed_product", &embed_product, py::arg("atom"), py::arg("field"));
  m.def("jc_joint_evolve", &jc_joint_evolve, py::arg("joint"), py::arg("cpl"));
  m.def("project_atom", &project_atom, py::arg("joint"), py::arg("atom_out"),
        py::arg("null_eps") = kNullOutcomeEps);
  m.def("nsm_step", &nsm_step, py::arg("rho"), py::arg("atom_in"), py::arg("cpl"));
  m.def("approx_cm_factor", &approx_cm_factor, py::arg("n"), py::arg("pulse"),
        py::arg("cpl"));
  m.def("critical_spread", &critical_spread, py::arg("g"), py::arg("n"));
  m.def("trapping_times", &trapping_times, py::arg("g"), py::arg("n"),
        py::arg("count"));

  py::enum_<SpreadDistribution>(m, "SpreadDistribution")
      .value("uniform", SpreadDistribution::uniform)
      .value("gaussian", SpreadDistribution::gaussian);

  py::class_<TimingModel>(m, "TimingModel")
      .def(py::init([](double tau_mean, double spread, double length_ratio,
                       SpreadDistribution dist) {
             return TimingModel{tau_mean, spread, length_ratio, dist};
           }),
           py::arg("tau_mean"), py::arg("spread") = 0.0,
           py::arg("length_ratio") = 1.0,
           py::arg("distribution") = SpreadDistribution::uniform)
      .def_readwrite("tau_mean", &TimingModel::tau_mean)
      .def_readwrite("spread", &TimingModel::spread)
      .def_readwrite("length_ratio", &TimingModel::length_ratio)
      .def_readwrite("distribution", &TimingModel::distribution)
      .def("validate", &TimingModel::validate);

  py::class_<InteractionSample>(m, "InteractionSample")
      .def_readonly("tau", &InteractionSample::tau)
      .def_readonly("t_final_pulse", &InteractionSample::t_final_pulse);

  py::class_<Rng>(m, "Rng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("uniform01", &Rng::uniform01)
      .def("uniform", &Rng::uniform, py::arg("lo"), py::arg("hi"))
      .def("normal", &Rng::normal, py::arg("mean"), py::arg("sigma"));

  m.def("sample_times", &sample_times, py::arg("model"), py::arg("rng"));
  m.def("uncorrelated_sample_times", &uncorrelated_sample_times, py::arg("model"),
        py::arg("rng"));

  py::enum_<Scheme>(m, "Scheme")
      .value("elastic_ee", Scheme::elastic_ee)
      .value("inelastic_eg", Scheme::inelastic_eg)
      .value("interference_epg", Scheme::interference_epg)
      .value("nsm", Scheme::nsm);
  py::enum_<Selection>(m, "Selection")
      .value("forced_postselect", Selection::forced_postselect)
      .value("born_sampled", Selection::born_sampled);
  py::enum_<Correlation>(m, "Correlation")
      .value("correlated", Correlation::correlated)
      .value("uncorrelated", Correlation::uncorrelated);
  py::enum_<Fault>(m, "Fault")
      .value("none", Fault::none)
      .value("null_outcome", Fault::null_outcome)
      .value("truncation", Fault::truncation);

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("g", &ExperimentConfig::g)
      .def_readwrite("alpha_init", &ExperimentConfig::alpha_init)
      .def_readwrite("n_target", &ExperimentConfig::n_target)
      .def_readwrite("scheme", &ExperimentConfig::scheme)
      .def_readwrite("timing", &ExperimentConfig::timing)
      .def_readwrite("final_pulse_omega", &ExperimentConfig::final_pulse_omega)
      .def_readwrite("final_pulse_phase", &ExperimentConfig::final_pulse_phase)
      .def_readwrite("n_atoms", &ExperimentConfig::n_atoms)
      .def_readwrite("n_max", &ExperimentConfig::n_max)
      .def_readwrite("seed", &ExperimentConfig::seed)
      .def_readwrite("selection", &ExperimentConfig::selection)
      .def_readwrite("correlation", &ExperimentConfig::correlation)
      .def_readwrite("tail_threshold", &ExperimentConfig::tail_threshold)
      .def("validate", &ExperimentConfig::validate)
      .def("resolved_n_max", &ExperimentConfig::resolved_n_max);

  m.def("resolve_target_pulse", &resolve_target_pulse, py::arg("config"));

  py::class_<StepRecord>(m, "StepRecord")
      .def_readonly("k", &StepRecord::k)
      .def_readonly("mean_n", &StepRecord::mean_n)
      .def_readonly("delta_n", &StepRecord::delta_n)
      .def_readonly("p_k", &StepRecord::p_k)
      .def_readonly("cum_log_success", &StepRecord::cum_log_success)
      .def_readonly("tau_k", &StepRecord::tau_k);

  py::class_<TrajectoryResult>(m, "TrajectoryResult")
      .def_readonly("records", &TrajectoryResult::records)
      .def_readonly("final_pn", &TrajectoryResult::final_pn)
      .def_readonly("converged", &TrajectoryResult::converged)
      .def_readonly("converged_n", &TrajectoryResult::converged_n)
      .def_readonly("fault", &TrajectoryResult::fault)
      .def_readonly("fault_step", &TrajectoryResult::fault_step)
      .def_readonly("fault_message", &TrajectoryResult::fault_message);

  py::class_<EnsembleSeedRow>(m, "EnsembleSeedRow")
      .def_readonly("seed", &EnsembleSeedRow::seed)
      .def_readonly("converged", &EnsembleSeedRow::converged)
      .def_readonly("converged_n", &EnsembleSeedRow::converged_n)
      .def_readonly("final_delta_n", &EnsembleSeedRow::final_delta_n)
      .def_readonly("cum_log_success", &EnsembleSeedRow::cum_log_success)
      .def_readonly("fault", &EnsembleSeedRow::fault);

  py::class_<EnsembleSummary>(m, "EnsembleSummary")
      .def_readonly("rows", &EnsembleSummary::rows)
      .def_readonly("median_delta_n", &EnsembleSummary::median_delta_n)
      .def_readonly("converged_n_counts", &EnsembleSummary::converged_n_counts)
      .def_readonly("mean_cum_log_success", &EnsembleSummary::mean_cum_log_success)
      .def_readonly("n_converged", &EnsembleSummary::n_converged);

  m.def("convergence_detector", &convergence_detector, py::arg("records"),
        py::arg("final_pn"));
  m.def("run_trajectory", &run_trajectory, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
  m.def("run_ensemble", &run_ensemble, py::arg("config"), py::arg("n_seeds"),
        py::call_guard<py::gil_scoped_release>());

  m.def("parse_config", &parse_config, py::arg("text"));
  m.def("format_config", &format_config, py::arg("config"));
  m.def("preset_config", &preset_config, py::arg("name"));
  m.def("preset_names", [] {
    std::vector<std::string> names;
    for (const auto& p : preset_list()) names.push_back(p.name);
    return names;
  });
  m.def("trajectory_csv", &trajectory_csv, py::arg("result"));
  m.def("final_pn_csv", &final_pn_csv, py::arg("pn"));
  m.def("summary_csv", &summary_csv, py::arg("summary"));
}
