#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace dpinv::verify {

inline constexpr std::uint64_t kDefaultSeed = 20180812;
inline constexpr int kReportSchemaVersion = 1;

struct Tolerances {
  double residual_tol = 1e-9;
  double jacobian_tol = 1e-5;
  double ks_level = 0.01;
  double coverage_band = 0.03;
  double equivalence_threshold = 0.05;
};

struct CheckConfig {
  std::uint64_t seed = kDefaultSeed;
  std::size_t trials = 10000;
  std::size_t jacobian_trials = 1000;
  std::size_t stability_trials = 1000;
  std::size_t sampler_draws = 10000;
  std::size_t coverage_replications = 500;
  std::vector<std::size_t> p_grid{2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::vector<std::size_t> jacobian_p_grid{2, 3, 4, 5, 6};
  std::vector<std::size_t> process_p_grid;  // 2..50 by default
  std::vector<double> eps_grid{0.5, 0.1, 0.01, 0.001};
  Tolerances tolerances;
  // Replace each check's statistic with its falsified variant; every check
  // must then fail.
  bool falsify = false;

  CheckConfig();

  // Throws Error(InvalidConfig) for zero trial counts, empty or invalid grids,
  // and tolerances that are negative or not finite.
  void validate() const;
};

// Reads the keys produced by to_json; absent keys keep their defaults and
// unknown keys are rejected.
CheckConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const CheckConfig& cfg);

struct NegativeControl {
  std::string description;
  double statistic = 0.0;
  // The falsified variant was detected as failing.
  bool flagged = false;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string statistic_name;
  double worst_statistic = 0.0;
  double threshold = 0.0;
  std::size_t trials = 0;
  NegativeControl negative_control;
  nlohmann::json details = nlohmann::json::object();
  std::vector<std::string> notes;
  double wall_seconds = 0.0;
};

struct VerificationReport {
  CheckConfig config;
  std::vector<CheckResult> checks;
  bool overall_pass = false;

  // Wall-time fields go into a separate "timing" object, and only when asked
  // for; without them the document is a pure function of the config.
  nlohmann::json to_json(bool include_timing = false) const;
};

CheckResult check_theorem1(const CheckConfig& cfg);
CheckResult check_prop1(const CheckConfig& cfg);
CheckResult check_corollary1(const CheckConfig& cfg);
CheckResult check_theorem2(const CheckConfig& cfg);
CheckResult check_theorem3(const CheckConfig& cfg);
CheckResult check_conjugacy_and_bootstrap(const CheckConfig& cfg);

VerificationReport run_all(const CheckConfig& cfg);

}  // namespace dpinv::verify
