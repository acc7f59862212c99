#include "sddcpf/scenario.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "sddcpf/rng.hpp"

namespace sddcpf {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// stream salts
constexpr std::uint64_t kSaltTruth = 0x74727574ULL;   // base state sampling
constexpr std::uint64_t kSaltSparse = 0x73707273ULL;  // sparse spikes
constexpr std::uint64_t kSaltAwgn = 0x6177676eULL;    // dense noise

double draw_magnitude(Rng& rng, const MagnitudeDist& dist) {
  switch (dist.kind) {
    case MagnitudeKind::uniform:
      return rng.uniform(dist.lo, dist.hi);
    case MagnitudeKind::gaussian:
      return dist.sigma * rng.gaussian();
    case MagnitudeKind::constant:
      return dist.value;
  }
  return 0.0;
}

double rel_error(const Eigen::VectorXd& estimate, const Eigen::VectorXd& truth) {
  return (estimate - truth).norm() / std::max(1.0, truth.norm());
}

}  // namespace

void ScenarioConfig::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0, 1]");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (sparse_magnitude.kind == MagnitudeKind::uniform && !(sparse_magnitude.lo < sparse_magnitude.hi)) {
    throw std::invalid_argument("uniform magnitude range needs lo < hi");
  }
  if (awgn_sigma < 0.0) throw std::invalid_argument("awgn sigma must be nonnegative");
  if (theta < 0.0) throw std::invalid_argument("theta must be nonnegative");
  if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("tau must lie in (0, 1)");
}

std::pair<StateVector, InjectionVector> synth_truth(const NetworkCase& net,
                                                    const SusceptanceMatrix& b,
                                                    std::uint64_t seed) {
  const int n = net.bus_count();
  StateVector delta(n);
  if (net.has_base_angles) {
    for (int i = 0; i < n; ++i) delta[i] = net.buses[i].base_angle;
  } else {
    Rng rng(seed, 0, kSaltTruth);
    for (int i = 0; i < n; ++i) delta[i] = 0.1 * rng.gaussian();
  }
  return {delta, injections(b, delta)};
}

MeasurementSet inject_noise(const InjectionVector& p_true, const ScenarioConfig& cfg,
                            int trial_index) {
  cfg.validate();
  const int n = static_cast<int>(p_true.size());
  MeasurementSet set;
  set.p_true = p_true;
  set.true_noise = Eigen::VectorXd::Zero(n);

  Rng sparse_rng(cfg.seed, static_cast<std::uint64_t>(trial_index), kSaltSparse);
  for (int i = 0; i < n; ++i) {
    const bool hit = sparse_rng.bernoulli(cfg.alpha);
    const double mag = draw_magnitude(sparse_rng, cfg.sparse_magnitude);  // keeps streams aligned
    if (hit && mag != 0.0) {
      set.true_noise[i] = mag;
      set.true_support.push_back(i);
    }
  }

  set.p_noisy = set.p_true + set.true_noise;
  if (cfg.awgn_sigma > 0.0) {
    Rng awgn_rng(cfg.seed, static_cast<std::uint64_t>(trial_index), kSaltAwgn);
    for (int i = 0; i < n; ++i) set.p_noisy[i] += cfg.awgn_sigma * awgn_rng.gaussian();
  }
  return set;
}

DetectionReport run_scenario(const NetworkCase& net, const ScenarioConfig& cfg) {
  cfg.validate();
  const auto b = build_b(net);
  const auto basis = decompose(b, cfg.tau);
  const auto [delta_true, p_true] = synth_truth(net, b, cfg.seed);
  const Eigen::VectorXd a_true = basis.q.transpose() * p_true;

  DetectionReport report;
  report.config = cfg;
  report.bus_count = net.bus_count();
  report.rank = basis.rank;
  report.mu_b = basis.complement_dimension() >= 1 ? coherence(basis).mu_b : kNaN;

  double det_sum = 0.0, fp_sum = 0.0, noise_err_sum = 0.0, l1_err_sum = 0.0, lse_err_sum = 0.0;
  int det_count = 0, ok_count = 0;

  for (int trial = 0; trial < cfg.trials; ++trial) {
    const auto meas = inject_noise(p_true, cfg, trial);
    TrialRecord rec;
    rec.trial = trial;
    rec.support_size = static_cast<int>(meas.true_support.size());

    auto [l1_est, noise] = l1_regress(basis, meas.p_noisy);
    rec.solver_ok = noise.solver_status == SolverStatus::optimal;
    if (!rec.solver_ok) {
      rec.detection_rate = kNaN;
      rec.noise_estimate_error = kNaN;
      rec.state_error_l1 = kNaN;
      rec.state_error_lse = kNaN;
      ++report.failed_trials;
      report.trials.push_back(rec);
      continue;
    }
    const auto flagged = flag_support(noise, cfg.theta);
    const auto lse_est = lse(basis, meas.p_noisy);

    int detected = 0;
    {
      auto it = flagged.indices.begin();
      for (int s : meas.true_support) {
        while (it != flagged.indices.end() && *it < s) ++it;
        if (it != flagged.indices.end() && *it == s) ++detected;
      }
    }
    rec.detected = detected;
    rec.false_positives = static_cast<int>(flagged.indices.size()) - detected;

    const Eigen::VectorXd total_noise = meas.p_noisy - meas.p_true;
    rec.noise_estimate_error = rel_error(noise.epsilon_hat, total_noise);
    rec.state_error_l1 = rel_error(l1_est.a_hat, a_true);
    rec.state_error_lse = rel_error(lse_est.a_hat, a_true);
    rec.detection_rate =
        rec.support_size > 0 ? static_cast<double>(detected) / rec.support_size : kNaN;

    ++ok_count;
    fp_sum += rec.false_positives;
    noise_err_sum += rec.noise_estimate_error;
    l1_err_sum += rec.state_error_l1;
    lse_err_sum += rec.state_error_lse;
    if (rec.support_size > 0) {
      det_sum += rec.detection_rate;
      ++det_count;
    }
    report.trials.push_back(rec);
  }

  report.scored_trials = ok_count;
  report.detection_rate = det_count > 0 ? det_sum / det_count : kNaN;
  report.false_positive_count = ok_count > 0 ? fp_sum / ok_count : kNaN;
  report.noise_estimate_error = ok_count > 0 ? noise_err_sum / ok_count : kNaN;
  report.state_estimate_error_l1 = ok_count > 0 ? l1_err_sum / ok_count : kNaN;
  report.state_estimate_error_lse = ok_count > 0 ? lse_err_sum / ok_count : kNaN;
  return report;
}

AlphaSweep sweep_alpha(const NetworkCase& net, const std::vector<double>& alphas,
                       const ScenarioConfig& cfg_template) {
  if (alphas.empty()) throw std::invalid_argument("sweep needs at least one alpha");
  AlphaSweep sweep;
  double prev = kNaN;
  for (double alpha : alphas) {
    ScenarioConfig cfg = cfg_template;
    cfg.alpha = alpha;
    const auto report = run_scenario(net, cfg);
    AlphaSweepRow row;
    row.alpha = alpha;
    row.mean_detection_rate = report.detection_rate;
    row.scored_trials = report.scored_trials;
    if (!std::isnan(prev) && !std::isnan(row.mean_detection_rate) &&
        row.mean_detection_rate > prev + 1e-12) {
      sweep.nonincreasing = false;
    }
    if (!std::isnan(row.mean_detection_rate)) prev = row.mean_detection_rate;
    sweep.rows.push_back(row);
  }
  return sweep;
}

ScenarioConfig preset(const std::string& name) {
  ScenarioConfig cfg;
  if (name == "I") {
    cfg.case_name = "ieee118";
    cfg.alpha = 0.03;
  } else if (name == "II") {
    cfg.case_name = "ieee118";
    cfg.alpha = 0.08;
  } else if (name == "III") {
    cfg.case_name = "ieee118";
    cfg.alpha = 0.15;
  } else if (name == "IV") {
    cfg.case_name = "ieee300";
    cfg.alpha = 0.03;
    cfg.note =
        "scenario IV: body text says alpha=0.08 but the figure caption says "
        "alpha=0.03; this preset follows the caption";
  } else if (name == "V") {
    cfg.case_name = "ieee300";
    cfg.alpha = 0.02;
    cfg.awgn_sigma = 0.01;
  } else if (name == "VI") {
    cfg.case_name = "ieee300";
    cfg.alpha = 0.08;
    cfg.sparse_magnitude = MagnitudeDist::make_uniform(-100.0, 100.0);
  } else {
    throw std::invalid_argument("unknown preset '" + name + "' (expected I..VI)");
  }
  return cfg;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"I", "II", "III", "IV", "V", "VI"};
  return names;
}

}  // namespace sddcpf
