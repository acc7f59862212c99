#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sddcpf/case_io.hpp"
#include "sddcpf/report_io.hpp"
#include "sddcpf/scenario.hpp"

#ifndef SDDCPF_DEFAULT_DATA_DIR
#define SDDCPF_DEFAULT_DATA_DIR "data"
#endif

namespace {

using sddcpf::format_double;
using Json = nlohmann::ordered_json;

struct CommonOpts {
  std::string case_arg;
  std::string data_dir = SDDCPF_DEFAULT_DATA_DIR;
  std::string format = "csv";
  std::string out_path;
};

// --case accepts a path or a bundled-case name (ieee118, case300, ...).
std::string resolve_case(const std::string& arg, const std::string& data_dir) {
  namespace fs = std::filesystem;
  if (arg.empty()) throw sddcpf::CaseFormatError("no case given: pass --case PATH|NAME");
  if (fs::exists(arg)) return arg;
  std::string name = arg;
  if (name.rfind("ieee", 0) == 0) name = "case" + name.substr(4);
  for (const auto& candidate : {name, name + ".m"}) {
    const auto path = fs::path(data_dir) / candidate;
    if (fs::exists(path)) return path.string();
  }
  throw sddcpf::CaseFormatError("case '" + arg + "' not found (looked in " + data_dir + ")");
}

void emit(const CommonOpts& opts, const std::string& text) {
  if (opts.out_path.empty() || opts.out_path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
  } else {
    std::ofstream out(opts.out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write output file: " + opts.out_path);
    out << text;
  }
}

void add_common(CLI::App* cmd, CommonOpts& opts, bool default_json = false) {
  if (default_json) opts.format = "json";
  cmd->add_option("--case", opts.case_arg, "case file path or bundled case name");
  cmd->add_option("--data-dir", opts.data_dir, "directory searched for bundled cases");
  cmd->add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", opts.out_path, "output file (default: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "sddcpf: sparsity-based error detection for DC power flow state estimation.\n"
      "CSV outputs always carry a header row; '#'-prefixed lines are summaries."};
  app.require_subcommand(1);

  // ---- spectrum ------------------------------------------------------
  CommonOpts spec_opts;
  double spec_tau = 1e-6;
  auto* spectrum = app.add_subcommand(
      "spectrum", "singular values of B, descending (csv: singular_value rows plus "
                  "# rank / # negligible / # tau summary lines)");
  add_common(spectrum, spec_opts);
  spectrum->add_option("--tau", spec_tau, "relative rank threshold");

  // ---- detect --------------------------------------------------------
  CommonOpts det_opts;
  sddcpf::ScenarioConfig det_cfg;
  double det_c = 1.0, det_fp = 0.05;
  double det_mag_lo = -10.0, det_mag_hi = 10.0;
  auto* detect = app.add_subcommand(
      "detect", "single-trial detection: inject one noise realization and report the "
                "flagged measurement indices");
  add_common(detect, det_opts, /*default_json=*/true);
  detect->add_option("--alpha", det_cfg.alpha, "per-element error probability");
  detect->add_option("--tau", det_cfg.tau, "relative rank threshold");
  detect->add_option("--theta", det_cfg.theta, "detection threshold, p.u.");
  detect->add_option("--awgn-sigma", det_cfg.awgn_sigma, "dense gaussian noise std-dev");
  detect->add_option("--mag-lo", det_mag_lo, "sparse magnitude lower bound");
  detect->add_option("--mag-hi", det_mag_hi, "sparse magnitude upper bound");
  detect->add_option("--seed", det_cfg.seed, "RNG seed");
  detect->add_option("--c", det_c, "recovery-bound constant");
  detect->add_option("--failure-prob", det_fp, "recovery-bound failure probability");

  // ---- run-scenario --------------------------------------------------
  CommonOpts run_opts;
  std::string run_preset;
  std::optional<double> run_alpha, run_tau, run_theta, run_awgn, run_mag_lo, run_mag_hi;
  std::optional<int> run_trials;
  std::optional<std::uint64_t> run_seed;
  double run_c = 1.0, run_fp = 0.05;
  auto* run = app.add_subcommand(
      "run-scenario", "Monte-Carlo detection scenario (json: report with resolved config; "
                      "csv: per-trial rows)");
  add_common(run, run_opts, /*default_json=*/true);
  run->add_option("--preset", run_preset, "scenario preset I..VI")
      ->check(CLI::IsMember(sddcpf::preset_names()));
  run->add_option("--alpha", run_alpha, "per-element error probability");
  run->add_option("--tau", run_tau, "relative rank threshold");
  run->add_option("--theta", run_theta, "detection threshold, p.u.");
  run->add_option("--awgn-sigma", run_awgn, "dense gaussian noise std-dev");
  run->add_option("--mag-lo", run_mag_lo, "sparse magnitude lower bound");
  run->add_option("--mag-hi", run_mag_hi, "sparse magnitude upper bound");
  run->add_option("--trials", run_trials, "number of Monte-Carlo trials");
  run->add_option("--seed", run_seed, "RNG seed");
  run->add_option("--c", run_c, "recovery-bound constant");
  run->add_option("--failure-prob", run_fp, "recovery-bound failure probability");

  // ---- sweep-alpha ---------------------------------------------------
  CommonOpts sweep_opts;
  std::vector<double> sweep_alphas;
  std::optional<double> sweep_tau, sweep_theta, sweep_awgn, sweep_mag_lo, sweep_mag_hi;
  std::optional<int> sweep_trials;
  std::optional<std::uint64_t> sweep_seed;
  auto* sweep = app.add_subcommand(
      "sweep-alpha", "mean detection rate per alpha (repeat --alpha for each level)");
  add_common(sweep, sweep_opts);
  sweep->add_option("--alpha", sweep_alphas, "alpha level (repeatable)")->required();
  sweep->add_option("--tau", sweep_tau, "relative rank threshold");
  sweep->add_option("--theta", sweep_theta, "detection threshold, p.u.");
  sweep->add_option("--awgn-sigma", sweep_awgn, "dense gaussian noise std-dev");
  sweep->add_option("--mag-lo", sweep_mag_lo, "sparse magnitude lower bound");
  sweep->add_option("--mag-hi", sweep_mag_hi, "sparse magnitude upper bound");
  sweep->add_option("--trials", sweep_trials, "number of Monte-Carlo trials");
  sweep->add_option("--seed", sweep_seed, "RNG seed");

  // ---- flows ---------------------------------------------------------
  CommonOpts flow_opts;
  auto* flows = app.add_subcommand("flows", "per-branch DC flows at the case base angles");
  add_common(flows, flow_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*spectrum) {
      const auto net = sddcpf::load_case(resolve_case(spec_opts.case_arg, spec_opts.data_dir));
      const auto basis = sddcpf::decompose(sddcpf::build_b(net), spec_tau);
      const int n = basis.dimension();
      if (spec_opts.format == "csv") {
        std::string text = "singular_value\n";
        for (int i = 0; i < n; ++i) text += format_double(basis.singular_values[i]) + "\n";
        text += "# rank," + std::to_string(basis.rank) + "\n";
        text += "# negligible," + std::to_string(n - basis.rank) + "\n";
        text += "# tau," + format_double(basis.tau) + "\n";
        emit(spec_opts, text);
      } else {
        Json j = {{"case", net.name},
                  {"tau", basis.tau},
                  {"rank", basis.rank},
                  {"negligible", n - basis.rank},
                  {"singular_values", Json::array()}};
        for (int i = 0; i < n; ++i) j["singular_values"].push_back(basis.singular_values[i]);
        emit(spec_opts, j.dump(2) + "\n");
      }
      return 0;
    }

    if (*detect) {
      det_cfg.sparse_magnitude = sddcpf::MagnitudeDist::make_uniform(det_mag_lo, det_mag_hi);
      det_cfg.validate();
      const auto net = sddcpf::load_case(resolve_case(det_opts.case_arg, det_opts.data_dir));
      det_cfg.case_name = net.name;
      const auto b = sddcpf::build_b(net);
      const auto basis = sddcpf::decompose(b, det_cfg.tau);
      const auto [delta_true, p_true] = sddcpf::synth_truth(net, b, det_cfg.seed);
      const auto meas = sddcpf::inject_noise(p_true, det_cfg, /*trial_index=*/0);
      const auto [l1_est, noise] = sddcpf::l1_regress(basis, meas.p_noisy);
      const auto flagged = sddcpf::flag_support(noise, det_cfg.theta);
      const auto bound = sddcpf::check_recovery_bound(
          basis, static_cast<int>(meas.true_support.size()), det_c, det_fp);
      const auto recovered = sddcpf::recover_state(net, basis, meas.p_noisy - noise.epsilon_hat);

      if (det_opts.format == "json") {
        Json j = {{"config", Json::parse(sddcpf::config_to_json(det_cfg))},
                  {"rank", basis.rank},
                  {"complement_dimension", basis.complement_dimension()},
                  {"mu_b", sddcpf::coherence(basis).mu_b},
                  {"solver_status", noise.solver_status == sddcpf::SolverStatus::optimal
                                        ? "optimal"
                                        : "not_optimal"},
                  {"objective", noise.objective},
                  {"flagged", flagged.indices},
                  {"true_support", meas.true_support},
                  {"recovery_bound_satisfied", bound.satisfied}};
        Json eps = Json::array(), state = Json::array();
        for (int i = 0; i < noise.epsilon_hat.size(); ++i) eps.push_back(noise.epsilon_hat[i]);
        for (int i = 0; i < recovered.size(); ++i) state.push_back(recovered[i]);
        j["epsilon_hat"] = std::move(eps);
        j["recovered_angles"] = std::move(state);
        emit(det_opts, j.dump(2) + "\n");
      } else {
        std::string text = "bus,epsilon_hat,flagged,recovered_angle\n";
        std::size_t fi = 0;
        for (int i = 0; i < noise.epsilon_hat.size(); ++i) {
          const bool hit = fi < flagged.indices.size() && flagged.indices[fi] == i;
          if (hit) ++fi;
          text += std::to_string(i) + ',' + format_double(noise.epsilon_hat[i]) + ',' +
                  (hit ? "1" : "0") + ',' + format_double(recovered[i]) + '\n';
        }
        emit(det_opts, text);
      }
      return noise.solver_status == sddcpf::SolverStatus::optimal ? 0 : 2;
    }

    if (*run) {
      sddcpf::ScenarioConfig cfg =
          run_preset.empty() ? sddcpf::ScenarioConfig{} : sddcpf::preset(run_preset);
      if (run_alpha) cfg.alpha = *run_alpha;
      if (run_tau) cfg.tau = *run_tau;
      if (run_theta) cfg.theta = *run_theta;
      if (run_awgn) cfg.awgn_sigma = *run_awgn;
      if (run_mag_lo) cfg.sparse_magnitude.lo = *run_mag_lo;
      if (run_mag_hi) cfg.sparse_magnitude.hi = *run_mag_hi;
      if (run_trials) cfg.trials = *run_trials;
      if (run_seed) cfg.seed = *run_seed;
      if (!run_opts.case_arg.empty()) cfg.case_name = run_opts.case_arg;
      cfg.validate();
      const auto net = sddcpf::load_case(resolve_case(cfg.case_name, run_opts.data_dir));
      const auto report = sddcpf::run_scenario(net, cfg);
      if (run_opts.format == "json") {
        Json j = Json::parse(sddcpf::report_to_json(report));
        const auto basis = sddcpf::decompose(sddcpf::build_b(net), cfg.tau);
        const int expected_k = static_cast<int>(std::lround(cfg.alpha * net.bus_count()));
        const auto bound = sddcpf::check_recovery_bound(basis, expected_k, run_c, run_fp);
        j["recovery_bound"] = {{"k", bound.sparsity_k},
                               {"c", bound.constant_c},
                               {"failure_prob", bound.failure_prob},
                               {"satisfied", bound.satisfied}};
        emit(run_opts, j.dump(2) + "\n");
      } else {
        emit(run_opts, sddcpf::report_to_csv(report));
      }
      return 0;
    }

    if (*sweep) {
      sddcpf::ScenarioConfig cfg;
      if (sweep_tau) cfg.tau = *sweep_tau;
      if (sweep_theta) cfg.theta = *sweep_theta;
      if (sweep_awgn) cfg.awgn_sigma = *sweep_awgn;
      if (sweep_mag_lo) cfg.sparse_magnitude.lo = *sweep_mag_lo;
      if (sweep_mag_hi) cfg.sparse_magnitude.hi = *sweep_mag_hi;
      if (sweep_trials) cfg.trials = *sweep_trials;
      if (sweep_seed) cfg.seed = *sweep_seed;
      const auto net = sddcpf::load_case(resolve_case(sweep_opts.case_arg, sweep_opts.data_dir));
      cfg.case_name = net.name;
      const auto table = sddcpf::sweep_alpha(net, sweep_alphas, cfg);
      emit(sweep_opts, sweep_opts.format == "json" ? sddcpf::sweep_to_json(table) + "\n"
                                                   : sddcpf::sweep_to_csv(table));
      return 0;
    }

    if (*flows) {
      const auto net = sddcpf::load_case(resolve_case(flow_opts.case_arg, flow_opts.data_dir));
      sddcpf::StateVector delta(net.bus_count());
      for (int i = 0; i < net.bus_count(); ++i) delta[i] = net.buses[i].base_angle;
      const auto f = sddcpf::line_flows(net, delta);
      if (flow_opts.format == "csv") {
        std::string text = "from,to,reactance,flow\n";
        for (std::size_t k = 0; k < net.branches.size(); ++k) {
          const auto& br = net.branches[k];
          text += std::to_string(net.buses[br.from_bus].external_id) + ',' +
                  std::to_string(net.buses[br.to_bus].external_id) + ',' +
                  format_double(br.reactance_x) + ',' + format_double(f[k]) + '\n';
        }
        emit(flow_opts, text);
      } else {
        Json j = Json::array();
        for (std::size_t k = 0; k < net.branches.size(); ++k) {
          const auto& br = net.branches[k];
          j.push_back({{"from", net.buses[br.from_bus].external_id},
                       {"to", net.buses[br.to_bus].external_id},
                       {"reactance", br.reactance_x},
                       {"flow", f[k]}});
        }
        emit(flow_opts, j.dump(2) + "\n");
      }
      return 0;
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
  return 0;
}
