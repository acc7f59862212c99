// End-to-end acceptance checks. Each criterion prints exactly one
// PASS/FAIL line; the exit code is the number of failures.
//
// usage: sddcpf_acceptance <path-to-cli-binary>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "sddcpf/report_io.hpp"
#include "sddcpf/scenario.hpp"

using namespace sddcpf;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  if (!pass) ++g_failures;
  std::cout << "criterion " << criterion << ": " << (pass ? "PASS" : "FAIL") << " - " << detail
            << std::endl;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

NetworkCase fixture(const std::string& name) {
  return load_case(std::string(SDDCPF_DATA_DIR) + "/" + name + ".m");
}

std::string run_command(const std::string& cmd) {
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {};
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  pclose(pipe);
  return out;
}

// percentile bootstrap interval for the mean, fixed resampling stream
std::pair<double, double> bootstrap_ci(const std::vector<double>& samples, Rng& rng,
                                       int resamples = 2000) {
  std::vector<double> means(resamples);
  const std::size_t n = samples.size();
  for (int r = 0; r < resamples; ++r) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += samples[rng.next() % n];
    means[r] = total / static_cast<double>(n);
  }
  std::sort(means.begin(), means.end());
  return {means[static_cast<std::size_t>(0.025 * resamples)],
          means[static_cast<std::size_t>(0.975 * resamples) - 1]};
}

std::vector<double> trial_rates(const DetectionReport& rep) {
  std::vector<double> rates;
  for (const auto& rec : rep.trials) {
    if (!std::isnan(rec.detection_rate)) rates.push_back(rec.detection_rate);
  }
  return rates;
}

void criterion_1() {
  const auto start = Clock::now();
  const auto net = fixture("case300");
  ScenarioConfig cfg = preset("VI");
  const auto rep = run_scenario(net, cfg);
  const double elapsed = seconds_since(start);
  const bool in_band = rep.detection_rate >= 0.60 && rep.detection_rate <= 0.95;
  std::ostringstream msg;
  msg << "300-bus alpha=0.08 uniform(-100,100): mean detection rate "
      << format_double(rep.detection_rate) << " over " << rep.scored_trials << " trials in "
      << format_double(elapsed) << "s (band [0.60, 0.95], limit 60s)";
  report(1, in_band && rep.scored_trials == cfg.trials && elapsed <= 60.0, msg.str());
}

void criterion_2() {
  const auto start = Clock::now();
  const auto net = fixture("case118");
  const std::vector<double> alphas = {0.03, 0.08, 0.15};
  std::vector<double> means;
  std::vector<std::pair<double, double>> intervals;
  Rng boot_rng(777);
  for (double alpha : alphas) {
    ScenarioConfig cfg;
    cfg.case_name = "ieee118";
    cfg.alpha = alpha;
    const auto rep = run_scenario(net, cfg);
    means.push_back(rep.detection_rate);
    intervals.push_back(bootstrap_ci(trial_rates(rep), boot_rng));
  }
  const double elapsed = seconds_since(start);

  bool ordered = true;
  std::ostringstream msg;
  msg << "118-bus sparsity trend:";
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    msg << " alpha=" << format_double(alphas[i]) << " rate=" << format_double(means[i]) << " ci=["
        << format_double(intervals[i].first) << ", " << format_double(intervals[i].second) << "]";
  }
  for (std::size_t i = 1; i < means.size(); ++i) {
    if (means[i] > means[i - 1]) ordered = false;
    if (intervals[i].second < intervals[i - 1].first) {
      msg << "; gap " << i << " separated";
    } else {
      msg << "; gap " << i << " tie";
    }
  }
  msg << "; " << format_double(elapsed) << "s (limit 120s)";
  report(2, ordered && elapsed <= 120.0, msg.str());
}

void criterion_3() {
  const auto net = fixture("case300");
  const auto b = build_b(net);
  const auto basis = decompose(b);
  const auto coh = coherence(basis);
  const auto [delta, p_true] = synth_truth(net, b, 1);
  const Eigen::VectorXd a_true = basis.q.transpose() * p_true;
  const int n = net.bus_count();

  // candidate rows with real complement weight; errors placed elsewhere are
  // invisible to any detector working from the complement projection
  std::vector<int> rows;
  for (int i = 0; i < n; ++i) {
    if (coh.per_row_norms[i] >= 0.3) rows.push_back(i);
  }

  Rng rng(303);
  const double theta = 0.1;
  const double scale = 100.0;
  int indicator_mismatches = 0;
  int sd_drift = 0;
  int lse_lagging = 0;
  int solver_failures = 0;

  for (int trial = 0; trial < 100; ++trial) {
    // spikes on adjacent buses blur into each other; keep them apart so the
    // support stays identifiable and the run measures scale effects only
    Eigen::VectorXd eps = Eigen::VectorXd::Zero(n);
    std::vector<int> picked;
    while (picked.size() < 3) {
      const int idx = rows[rng.next() % rows.size()];
      bool clear = true;
      for (int other : picked) {
        if (std::abs(idx - other) < 5) clear = false;
      }
      if (clear) picked.push_back(idx);
    }
    for (int idx : picked) {
      eps[idx] = rng.uniform(1.0, 10.0) * (rng.bernoulli(0.5) ? 1.0 : -1.0);
    }

    std::vector<double> sd_errors, lse_errors;
    std::vector<std::vector<int>> flagged;
    bool solver_ok = true;
    for (double s : {1.0, scale}) {
      const Eigen::VectorXd p = p_true + s * eps;
      const auto [l1_est, noise] = l1_regress(basis, p);
      if (noise.solver_status != SolverStatus::optimal) solver_ok = false;
      flagged.push_back(flag_support(noise, theta * s).indices);
      const double denom = std::max(1.0, a_true.norm());
      sd_errors.push_back((l1_est.a_hat - a_true).norm() / denom);
      lse_errors.push_back((lse(basis, p).a_hat - a_true).norm() / denom);
    }
    if (!solver_ok) {
      ++solver_failures;
      continue;
    }
    if (flagged[0] != flagged[1]) ++indicator_mismatches;
    if (std::abs(sd_errors[1] - sd_errors[0]) > 1e-6) ++sd_drift;
    if (lse_errors[1] < 10.0 * lse_errors[0]) ++lse_lagging;
  }

  std::ostringstream msg;
  msg << "magnitude robustness x1 vs x100 over 100 trials: indicator mismatches "
      << indicator_mismatches << ", state-error drift >1e-6 in " << sd_drift
      << " trials, LSE growth <10x in " << lse_lagging << " trials, solver failures "
      << solver_failures;
  report(3, indicator_mismatches == 0 && sd_drift == 0 && lse_lagging == 0 &&
                solver_failures == 0,
         msg.str());
}

SubspaceBasis synthetic_basis(Rng& rng, int n, int m) {
  const Eigen::MatrixXd full = oracle::random_orthonormal(rng, n, n);
  SubspaceBasis basis;
  basis.q = full.leftCols(n - m);
  basis.q_perp = full.rightCols(m);
  basis.rank = n - m;
  basis.tau = 1e-6;
  basis.singular_values = Eigen::VectorXd::Zero(n);
  basis.singular_values.head(basis.rank).setOnes();
  return basis;
}

void criterion_4() {
  Rng rng(404);
  int exact = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto basis = synthetic_basis(rng, 100, 40);
    Eigen::VectorXd eps = Eigen::VectorXd::Zero(100);
    for (int k = 0; k < 3; ++k) {
      int idx;
      do {
        idx = static_cast<int>(rng.next() % 100);
      } while (eps[idx] != 0.0);
      eps[idx] = rng.uniform(1.0, 10.0) * (rng.bernoulli(0.5) ? 1.0 : -1.0);
    }
    const auto est = l1_detect(basis, eps);
    if (est.solver_status == SolverStatus::optimal &&
        (est.epsilon_hat - eps).lpNorm<Eigen::Infinity>() < 1e-6) {
      ++exact;
    }
  }

  // small-dimension sub-suite cross-checked against the brute-force search
  int oracle_mismatches = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 8 + static_cast<int>(rng.next() % 13);
    const int m = n - 1;
    auto basis = synthetic_basis(rng, n, m);
    const int kmax = std::min(3, m / 5);
    Eigen::VectorXd eps = Eigen::VectorXd::Zero(n);
    const int k = kmax > 0 ? 1 + static_cast<int>(rng.next() % kmax) : 0;
    for (int j = 0; j < k; ++j) {
      int idx;
      do {
        idx = static_cast<int>(rng.next() % n);
      } while (eps[idx] != 0.0);
      eps[idx] = rng.uniform(-10.0, 10.0);
    }
    const auto est = l1_detect(basis, eps);
    const Eigen::MatrixXd a = basis.q_perp.transpose();
    const auto best = oracle::l1_oracle(a, a * eps, 3);
    if (est.solver_status != SolverStatus::optimal || !best.found ||
        std::abs(est.objective - best.objective) > 1e-8) {
      ++oracle_mismatches;
    }
  }

  std::ostringstream msg;
  msg << "synthetic complement n=100 m=40 k=3: exact recovery in " << exact
      << "/100 trials (need >= 95); small-n oracle mismatches " << oracle_mismatches << "/100";
  report(4, exact >= 95 && oracle_mismatches == 0, msg.str());
}

void criterion_5(const std::string& cli) {
  const std::string out = run_command(cli + " spectrum --case ieee300 2>/dev/null");
  std::istringstream in(out);
  std::string line;
  std::vector<double> values;
  bool negligible_reported = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.find("negligible") != std::string::npos) negligible_reported = true;
    if (line[0] == '#' || std::isalpha(static_cast<unsigned char>(line[0]))) continue;
    values.push_back(std::stod(line));
  }

  bool nonincreasing = values.size() == 300;
  for (std::size_t i = 1; i < values.size() && nonincreasing; ++i) {
    if (values[i] > values[i - 1] + 1e-12) nonincreasing = false;
  }
  int below = 0;
  if (!values.empty()) {
    for (double v : values) {
      if (v < 1e-6 * values[0]) ++below;
    }
  }

  const auto net = fixture("case300");
  const auto tight = decompose(build_b(net), 1e-10);
  const auto bfs = oracle::bfs_components(net);
  const int components = 1 + *std::max_element(bfs.begin(), bfs.end());
  const bool nullity_ok = tight.complement_dimension() == components;

  std::ostringstream msg;
  msg << "spectrum output: " << values.size() << " values, nonincreasing="
      << (nonincreasing ? "yes" : "no") << ", " << below
      << " below 1e-6*sigma1, negligible count reported="
      << (negligible_reported ? "yes" : "no") << "; tight-threshold nullity "
      << tight.complement_dimension() << " vs " << components << " components";
  report(5, nonincreasing && below >= 1 && negligible_reported && nullity_ok, msg.str());
}

void criterion_6() {
  int violations = 0;
  auto check_net = [&](const NetworkCase& net) {
    const auto b = build_b(net);
    if ((b.entries - b.entries.transpose()).lpNorm<Eigen::Infinity>() != 0.0) ++violations;
    const double scale = std::max(1.0, b.entries.diagonal().maxCoeff());
    if (b.entries.rowwise().sum().lpNorm<Eigen::Infinity>() > 1e-9 * scale) ++violations;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(b.entries);
    const double sigma1 = std::max(eig.eigenvalues().cwiseAbs().maxCoeff(), 1.0);
    if (eig.eigenvalues().minCoeff() < -1e-9 * sigma1) ++violations;
  };

  check_net(fixture("case118"));
  check_net(fixture("case300"));
  Rng rng(606);
  for (int it = 0; it < 1000; ++it) {
    const int n = 2 + static_cast<int>(rng.next() % 11);
    const int parts = 1 + static_cast<int>(rng.next() % 3);
    check_net(oracle::random_network(rng, n, parts));
  }
  std::ostringstream msg;
  msg << "structural invariants on both fixtures and 1000 random networks: " << violations
      << " violations";
  report(6, violations == 0, msg.str());
}

void criterion_7() {
  Rng rng(707);
  int objective_mismatches = 0;
  int infeasible_solutions = 0;
  std::ostringstream detail;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 8 + static_cast<int>(rng.next() % 13);
    const int m = n - 1;
    auto basis = synthetic_basis(rng, n, m);
    const int kmax = std::min(3, m / 5);
    Eigen::VectorXd eps = Eigen::VectorXd::Zero(n);
    const int k = kmax > 0 ? 1 + static_cast<int>(rng.next() % kmax) : 0;
    for (int j = 0; j < k; ++j) {
      int idx;
      do {
        idx = static_cast<int>(rng.next() % n);
      } while (eps[idx] != 0.0);
      eps[idx] = rng.uniform(-10.0, 10.0);
    }

    const auto est = l1_detect(basis, eps);
    const Eigen::MatrixXd a = basis.q_perp.transpose();
    const Eigen::VectorXd y = a * eps;
    const auto best = oracle::l1_oracle(a, y, 3);
    if (est.solver_status != SolverStatus::optimal || !best.found ||
        std::abs(est.objective - best.objective) > 1e-8) {
      ++objective_mismatches;
      if (objective_mismatches <= 3) {
        detail << " [trial " << trial << " n=" << n << " k=" << k << " lp="
               << format_double(est.objective) << " oracle=" << format_double(best.objective)
               << "]";
      }
    }
    if ((a * est.epsilon_hat - y).lpNorm<Eigen::Infinity>() > feasibility_tolerance(y)) {
      ++infeasible_solutions;
    }
  }
  std::ostringstream msg;
  msg << "LP vs exhaustive-support oracle on 500 instances: " << objective_mismatches
      << " objective mismatches, " << infeasible_solutions << " feasibility violations"
      << detail.str();
  report(7, objective_mismatches == 0 && infeasible_solutions == 0, msg.str());
}

void criterion_8(const std::string& cli) {
  const std::string cmd = cli + " run-scenario --preset I --seed 42 2>/dev/null";
  const std::string first = run_command(cmd);
  const std::string second = run_command(cmd);
  std::ostringstream msg;
  msg << "run-scenario --preset I --seed 42 twice: " << first.size() << " bytes, "
      << (first == second ? "byte-identical" : "outputs differ");
  report(8, !first.empty() && first == second, msg.str());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: " << argv[0] << " <path-to-cli-binary>" << std::endl;
    return 64;
  }
  const std::string cli = argv[1];
  const std::string only = argc > 2 ? argv[2] : "12345678";
  auto wanted = [&](char c) { return only.find(c) != std::string::npos; };

  if (wanted('1')) criterion_1();
  if (wanted('2')) criterion_2();
  if (wanted('3')) criterion_3();
  if (wanted('4')) criterion_4();
  if (wanted('5')) criterion_5(cli);
  if (wanted('6')) criterion_6();
  if (wanted('7')) criterion_7();
  if (wanted('8')) criterion_8(cli);

  std::cout << (g_failures == 0 ? "all criteria passed" : "some criteria failed") << std::endl;
  return g_failures;
}
