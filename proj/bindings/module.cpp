#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sddcpf/case_io.hpp"
#include "sddcpf/report_io.hpp"
#include "sddcpf/scenario.hpp"
#include "sddcpf/sparse_recovery.hpp"

namespace py = pybind11;
using namespace sddcpf;

PYBIND11_MODULE(sddcpf, m) {
  m.doc() = "Sparsity-based error detection for DC power flow state estimation";

  py::register_exception<CaseFormatError>(m, "CaseFormatError", PyExc_ValueError);
  py::register_exception<EmptyComplementError>(m, "EmptyComplementError", PyExc_RuntimeError);

  py::enum_<BusKind>(m, "BusKind")
      .value("slack", BusKind::slack)
      .value("generator", BusKind::generator)
      .value("load", BusKind::load);

  py::class_<Bus>(m, "Bus")
      .def_readonly("external_id", &Bus::external_id)
      .def_readonly("dense_index", &Bus::dense_index)
      .def_readonly("bus_kind", &Bus::bus_kind)
      .def_readonly("base_angle", &Bus::base_angle);

  py::class_<Branch>(m, "Branch")
      .def_readonly("from_bus", &Branch::from_bus)
      .def_readonly("to_bus", &Branch::to_bus)
      .def_readonly("reactance_x", &Branch::reactance_x)
      .def_readonly("resistance_r", &Branch::resistance_r)
      .def_readonly("in_service", &Branch::in_service);

  py::class_<NetworkCase>(m, "NetworkCase")
      .def_readonly("name", &NetworkCase::name)
      .def_readonly("buses", &NetworkCase::buses)
      .def_readonly("branches", &NetworkCase::branches)
      .def_readonly("has_base_angles", &NetworkCase::has_base_angles)
      .def_property_readonly("bus_count", &NetworkCase::bus_count);

  m.def("parse_case", &parse_case, py::arg("source_text"), py::arg("name") = "case");
  m.def("parse_case_csv", &parse_case_csv, py::arg("bus_text"), py::arg("branch_text"),
        py::arg("name") = "case");
  m.def("load_case", &load_case, py::arg("path"));
  m.def("write_case", &write_case, py::arg("net"));
  m.def("connected_components", &connected_components, py::arg("net"));
  m.def("component_count", &component_count, py::arg("net"));
  m.def("default_data_dir", [] { return std::string(SDDCPF_DEFAULT_DATA_DIR); });

  py::class_<SusceptanceMatrix>(m, "SusceptanceMatrix")
      .def_readonly("entries", &SusceptanceMatrix::entries)
      .def_readonly("dimension", &SusceptanceMatrix::dimension);

  m.def("build_b", &build_b, py::arg("net"));
  m.def("injections", &injections, py::arg("b"), py::arg("state"));
  m.def("line_flows", &line_flows, py::arg("net"), py::arg("state"));

  py::class_<SubspaceBasis>(m, "SubspaceBasis")
      .def_readonly("q", &SubspaceBasis::q)
      .def_readonly("q_perp", &SubspaceBasis::q_perp)
      .def_readonly("singular_values", &SubspaceBasis::singular_values)
      .def_readonly("rank", &SubspaceBasis::rank)
      .def_readonly("tau", &SubspaceBasis::tau)
      .def_property_readonly("dimension", &SubspaceBasis::dimension)
      .def_property_readonly("complement_dimension", &SubspaceBasis::complement_dimension);

  py::class_<CoherenceReport>(m, "CoherenceReport")
      .def_readonly("mu_b", &CoherenceReport::mu_b)
      .def_readonly("per_row_norms", &CoherenceReport::per_row_norms);

  py::class_<RecoveryCondition>(m, "RecoveryCondition")
      .def_readonly("sparsity_k", &RecoveryCondition::sparsity_k)
      .def_readonly("constant_c", &RecoveryCondition::constant_c)
      .def_readonly("failure_prob", &RecoveryCondition::failure_prob)
      .def_readonly("satisfied", &RecoveryCondition::satisfied);

  m.def("decompose", &decompose, py::arg("b"), py::arg("tau") = 1e-6);
  m.def("coherence", &coherence, py::arg("basis"));
  m.def("check_recovery_bound", &check_recovery_bound, py::arg("basis"), py::arg("k"),
        py::arg("c") = 1.0, py::arg("failure_prob") = 0.05);

  py::enum_<SolverStatus>(m, "SolverStatus")
      .value("optimal", SolverStatus::optimal)
      .value("max_iterations", SolverStatus::max_iterations)
      .value("infeasible", SolverStatus::infeasible);

  py::class_<NoiseEstimate>(m, "NoiseEstimate")
      .def_readonly("epsilon_hat", &NoiseEstimate::epsilon_hat)
      .def_readonly("objective", &NoiseEstimate::objective)
      .def_readonly("solver_status", &NoiseEstimate::solver_status);

  py::enum_<EstimatorMethod>(m, "EstimatorMethod")
      .value("lse", EstimatorMethod::lse)
      .value("l1", EstimatorMethod::l1);

  py::class_<CoefficientEstimate>(m, "CoefficientEstimate")
      .def_readonly("a_hat", &CoefficientEstimate::a_hat)
      .def_readonly("method", &CoefficientEstimate::method);

  py::class_<FlaggedSupport>(m, "FlaggedSupport")
      .def_readonly("indices", &FlaggedSupport::indices)
      .def_readonly("threshold_theta", &FlaggedSupport::threshold_theta);

  m.def("l1_detect", &l1_detect, py::arg("basis"), py::arg("p"));
  m.def("lse", &lse, py::arg("basis"), py::arg("p"));
  m.def("l1_regress", &l1_regress, py::arg("basis"), py::arg("p"));
  m.def("flag_support", &flag_support, py::arg("est"), py::arg("theta"));
  m.def("recover_state", &recover_state, py::arg("net"), py::arg("basis"), py::arg("p_clean"));

  py::class_<MagnitudeDist>(m, "MagnitudeDist")
      .def_static("uniform", &MagnitudeDist::make_uniform, py::arg("lo"), py::arg("hi"))
      .def_static("gaussian", &MagnitudeDist::make_gaussian, py::arg("sigma"))
      .def_static("constant", &MagnitudeDist::make_constant, py::arg("value"));

  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def(py::init<>())
      .def_readwrite("case_name", &ScenarioConfig::case_name)
      .def_readwrite("alpha", &ScenarioConfig::alpha)
      .def_readwrite("sparse_magnitude", &ScenarioConfig::sparse_magnitude)
      .def_readwrite("awgn_sigma", &ScenarioConfig::awgn_sigma)
      .def_readwrite("theta", &ScenarioConfig::theta)
      .def_readwrite("tau", &ScenarioConfig::tau)
      .def_readwrite("trials", &ScenarioConfig::trials)
      .def_readwrite("seed", &ScenarioConfig::seed)
      .def_readwrite("note", &ScenarioConfig::note);

  py::class_<MeasurementSet>(m, "MeasurementSet")
      .def_readonly("p_true", &MeasurementSet::p_true)
      .def_readonly("p_noisy", &MeasurementSet::p_noisy)
      .def_readonly("true_support", &MeasurementSet::true_support)
      .def_readonly("true_noise", &MeasurementSet::true_noise);

  py::class_<TrialRecord>(m, "TrialRecord")
      .def_readonly("trial", &TrialRecord::trial)
      .def_readonly("support_size", &TrialRecord::support_size)
      .def_readonly("detected", &TrialRecord::detected)
      .def_readonly("false_positives", &TrialRecord::false_positives)
      .def_readonly("detection_rate", &TrialRecord::detection_rate)
      .def_readonly("noise_estimate_error", &TrialRecord::noise_estimate_error)
      .def_readonly("state_error_l1", &TrialRecord::state_error_l1)
      .def_readonly("state_error_lse", &TrialRecord::state_error_lse)
      .def_readonly("solver_ok", &TrialRecord::solver_ok);

  py::class_<DetectionReport>(m, "DetectionReport")
      .def_readonly("config", &DetectionReport::config)
      .def_readonly("bus_count", &DetectionReport::bus_count)
      .def_readonly("rank", &DetectionReport::rank)
      .def_readonly("mu_b", &DetectionReport::mu_b)
      .def_readonly("detection_rate", &DetectionReport::detection_rate)
      .def_readonly("false_positive_count", &DetectionReport::false_positive_count)
      .def_readonly("noise_estimate_error", &DetectionReport::noise_estimate_error)
      .def_readonly("state_estimate_error_l1", &DetectionReport::state_estimate_error_l1)
      .def_readonly("state_estimate_error_lse", &DetectionReport::state_estimate_error_lse)
      .def_readonly("scored_trials", &DetectionReport::scored_trials)
      .def_readonly("failed_trials", &DetectionReport::failed_trials)
      .def_readonly("trials", &DetectionReport::trials)
      .def("to_json", [](const DetectionReport& r) { return report_to_json(r); })
      .def("to_csv", [](const DetectionReport& r) { return report_to_csv(r); });

  m.def("synth_truth", &synth_truth, py::arg("net"), py::arg("b"), py::arg("seed"));
  m.def("inject_noise", &inject_noise, py::arg("p_true"), py::arg("cfg"),
        py::arg("trial_index"));
  m.def("run_scenario", &run_scenario, py::arg("net"), py::arg("cfg"));
  m.def("preset", &preset, py::arg("name"));
  m.def("preset_names", [] { return preset_names(); });

  py::class_<AlphaSweepRow>(m, "AlphaSweepRow")
      .def_readonly("alpha", &AlphaSweepRow::alpha)
      .def_readonly("mean_detection_rate", &AlphaSweepRow::mean_detection_rate)
      .def_readonly("scored_trials", &AlphaSweepRow::scored_trials);

  py::class_<AlphaSweep>(m, "AlphaSweep")
      .def_readonly("rows", &AlphaSweep::rows)
      .def_readonly("nonincreasing", &AlphaSweep::nonincreasing);

  m.def("sweep_alpha", &sweep_alpha, py::arg("net"), py::arg("alphas"), py::arg("cfg_template"));
}
