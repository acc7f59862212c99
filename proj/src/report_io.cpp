#include "sddcpf/report_io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace sddcpf {

namespace {

using Json = nlohmann::ordered_json;

const char* magnitude_kind_name(MagnitudeKind kind) {
  switch (kind) {
    case MagnitudeKind::uniform:
      return "uniform";
    case MagnitudeKind::gaussian:
      return "gaussian";
    case MagnitudeKind::constant:
      return "constant";
  }
  return "?";
}

Json json_number(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

Json config_json(const ScenarioConfig& cfg) {
  Json mag = {{"kind", magnitude_kind_name(cfg.sparse_magnitude.kind)}};
  switch (cfg.sparse_magnitude.kind) {
    case MagnitudeKind::uniform:
      mag["lo"] = cfg.sparse_magnitude.lo;
      mag["hi"] = cfg.sparse_magnitude.hi;
      break;
    case MagnitudeKind::gaussian:
      mag["sigma"] = cfg.sparse_magnitude.sigma;
      break;
    case MagnitudeKind::constant:
      mag["value"] = cfg.sparse_magnitude.value;
      break;
  }
  Json j = {
      {"case_name", cfg.case_name},
      {"alpha", cfg.alpha},
      {"sparse_magnitude", mag},
      {"awgn_sigma", cfg.awgn_sigma},
      {"theta", cfg.theta},
      {"tau", cfg.tau},
      {"trials", cfg.trials},
      {"seed", cfg.seed},
  };
  if (!cfg.note.empty()) j["note"] = cfg.note;
  return j;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string config_to_json(const ScenarioConfig& cfg) { return config_json(cfg).dump(2); }

std::string report_to_json(const DetectionReport& report) {
  Json j = {
      {"config", config_json(report.config)},
      {"bus_count", report.bus_count},
      {"rank", report.rank},
      {"mu_b", json_number(report.mu_b)},
      {"detection_rate", json_number(report.detection_rate)},
      {"false_positive_count", json_number(report.false_positive_count)},
      {"noise_estimate_error", json_number(report.noise_estimate_error)},
      {"state_estimate_error_l1", json_number(report.state_estimate_error_l1)},
      {"state_estimate_error_lse", json_number(report.state_estimate_error_lse)},
      {"scored_trials", report.scored_trials},
      {"failed_trials", report.failed_trials},
  };
  Json trials = Json::array();
  for (const auto& rec : report.trials) {
    trials.push_back({
        {"trial", rec.trial},
        {"support_size", rec.support_size},
        {"detected", rec.detected},
        {"false_positives", rec.false_positives},
        {"detection_rate", json_number(rec.detection_rate)},
        {"noise_estimate_error", json_number(rec.noise_estimate_error)},
        {"state_error_l1", json_number(rec.state_error_l1)},
        {"state_error_lse", json_number(rec.state_error_lse)},
        {"solver_ok", rec.solver_ok},
    });
  }
  j["trials"] = std::move(trials);
  return j.dump(2);
}

std::string report_to_csv(const DetectionReport& report) {
  std::ostringstream out;
  out << "trial,support_size,detected,false_positives,detection_rate,"
         "noise_estimate_error,state_error_l1,state_error_lse,solver_ok\n";
  for (const auto& rec : report.trials) {
    out << rec.trial << ',' << rec.support_size << ',' << rec.detected << ','
        << rec.false_positives << ',' << format_double(rec.detection_rate) << ','
        << format_double(rec.noise_estimate_error) << ',' << format_double(rec.state_error_l1)
        << ',' << format_double(rec.state_error_lse) << ',' << (rec.solver_ok ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string sweep_to_json(const AlphaSweep& sweep) {
  Json rows = Json::array();
  for (const auto& row : sweep.rows) {
    rows.push_back({{"alpha", row.alpha},
                    {"mean_detection_rate", json_number(row.mean_detection_rate)},
                    {"scored_trials", row.scored_trials}});
  }
  Json j = {{"rows", std::move(rows)}, {"nonincreasing", sweep.nonincreasing}};
  return j.dump(2);
}

std::string sweep_to_csv(const AlphaSweep& sweep) {
  std::ostringstream out;
  out << "alpha,mean_detection_rate,scored_trials\n";
  for (const auto& row : sweep.rows) {
    out << format_double(row.alpha) << ',' << format_double(row.mean_detection_rate) << ','
        << row.scored_trials << '\n';
  }
  out << "# nonincreasing," << (sweep.nonincreasing ? 1 : 0) << '\n';
  return out.str();
}

}  // namespace sddcpf
