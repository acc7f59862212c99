#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sddcpf/sparse_recovery.hpp"

namespace sddcpf {

enum class MagnitudeKind { uniform, gaussian, constant };

struct MagnitudeDist {
  MagnitudeKind kind = MagnitudeKind::uniform;
  double lo = -10.0;  // uniform
  double hi = 10.0;
  double sigma = 1.0;  // gaussian
  double value = 1.0;  // constant

  static MagnitudeDist make_uniform(double lo, double hi) {
    MagnitudeDist d;
    d.kind = MagnitudeKind::uniform;
    d.lo = lo;
    d.hi = hi;
    return d;
  }
  static MagnitudeDist make_gaussian(double sigma) {
    MagnitudeDist d;
    d.kind = MagnitudeKind::gaussian;
    d.sigma = sigma;
    return d;
  }
  static MagnitudeDist make_constant(double v) {
    MagnitudeDist d;
    d.kind = MagnitudeKind::constant;
    d.value = v;
    return d;
  }
};

struct ScenarioConfig {
  std::string case_name = "ieee118";
  double alpha = 0.08;  // per-element probability of a sparse error
  MagnitudeDist sparse_magnitude = MagnitudeDist::make_uniform(-10.0, 10.0);
  double awgn_sigma = 0.0;  // per-unit std-dev, 0 disables
  double theta = 0.1;       // detection threshold, per-unit
  double tau = 1e-6;        // rank threshold
  int trials = 100;
  std::uint64_t seed = 1;
  std::string note;  // carried into report metadata

  void validate() const;  // throws std::invalid_argument
};

struct MeasurementSet {
  InjectionVector p_true;
  InjectionVector p_noisy;
  std::vector<int> true_support;  // sorted indices of nonzero sparse noise
  Eigen::VectorXd true_noise;     // sparse part only, AWGN excluded
};

struct TrialRecord {
  int trial = 0;
  int support_size = 0;
  int detected = 0;
  int false_positives = 0;
  double detection_rate = 0.0;  // NaN when support_size == 0
  double noise_estimate_error = 0.0;
  double state_error_l1 = 0.0;
  double state_error_lse = 0.0;
  bool solver_ok = true;
};

struct DetectionReport {
  ScenarioConfig config;
  int bus_count = 0;
  int rank = 0;
  double mu_b = 0.0;
  double detection_rate = 0.0;  // mean over scored trials, NaN if none
  double false_positive_count = 0.0;  // mean per trial
  double noise_estimate_error = 0.0;
  double state_estimate_error_l1 = 0.0;
  double state_estimate_error_lse = 0.0;
  int scored_trials = 0;
  int failed_trials = 0;
  std::vector<TrialRecord> trials;
};

/// True state and injections. Base angles come from the case file when it
/// carries them; otherwise i.i.d. gaussian(0, 0.1 rad) drawn from `seed`.
std::pair<StateVector, InjectionVector> synth_truth(const NetworkCase& net,
                                                    const SusceptanceMatrix& b,
                                                    std::uint64_t seed);

/// Bernoulli(alpha) support, magnitudes from the configured distribution,
/// optional AWGN. Streams derive from (seed, trial_index).
MeasurementSet inject_noise(const InjectionVector& p_true, const ScenarioConfig& cfg,
                            int trial_index);

DetectionReport run_scenario(const NetworkCase& net, const ScenarioConfig& cfg);

struct AlphaSweepRow {
  double alpha = 0.0;
  double mean_detection_rate = 0.0;  // NaN when undefined (alpha == 0)
  int scored_trials = 0;
};

struct AlphaSweep {
  std::vector<AlphaSweepRow> rows;
  bool nonincreasing = true;  // over rows with a defined rate
};

AlphaSweep sweep_alpha(const NetworkCase& net, const std::vector<double>& alphas,
                       const ScenarioConfig& cfg_template);

/// Named scenario presets I..VI.
ScenarioConfig preset(const std::string& name);

const std::vector<std::string>& preset_names();

}  // namespace sddcpf
