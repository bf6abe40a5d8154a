#pragma once

// Batch experiments with tolerance gates. Each run yields a list of gates and
// optionally a CSV time series; summaries are JSON objects with schema 1.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace bilax::experiments {

inline constexpr int kSchemaVersion = 1;

/// Experiments accepted by run_experiment, in the order `all` runs them.
const std::vector<std::string>& experiment_names();

/// Gates reported by one experiment.
const std::vector<std::string>& gate_names(const std::string& experiment);

struct ExperimentConfig {
  std::string experiment;
  std::size_t n = 3;
  std::optional<std::uint64_t> seed;
  int k = 2;
  int l = 0;
  double t_final = 1.0;
  std::optional<double> h;  ///< each experiment has its own default
  int M = 256;
  int J = 40;
  int K = 64;
  std::map<std::string, double> tol_overrides;
  std::filesystem::path out_dir;
};

/// Throws std::invalid_argument describing the first problem found.
void validate(const ExperimentConfig& cfg);

/// Applies the keys of a JSON object (n, seed, k, l, t, h, M, J, K, out,
/// tol) on top of cfg. Unknown keys are rejected.
void apply_json(ExperimentConfig& cfg, const nlohmann::json& j);

nlohmann::json config_json(const ExperimentConfig& cfg);

struct Gate {
  std::string name;
  double value = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct ExperimentResult {
  std::string experiment;
  nlohmann::json config;
  std::vector<Gate> gates;
  std::string csv;  ///< empty when the experiment has no time series

  bool pass() const;
  /// Names of failing gates.
  std::vector<std::string> failures() const;
};

/// Runs cfg.experiment (not "all"). Throws std::invalid_argument on a bad config.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

nlohmann::json summary_json(const ExperimentResult& r);

/// Writes <out>/<experiment>.json and, if present, <out>/<experiment>.csv.
void write_outputs(const ExperimentResult& r, const std::filesystem::path& out_dir);

/// Merges every *.json summary in dir (skipping report.json). Throws
/// std::runtime_error on a missing directory or an unreadable summary.
nlohmann::json merge_reports(const std::filesystem::path& dir);

}  // namespace bilax::experiments
