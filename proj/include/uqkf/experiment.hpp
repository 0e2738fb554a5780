#pragma once

#include "uqkf/io.hpp"
#include "uqkf/problems.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace uqkf {

enum class FilterChoice { Enkf, Pckf, Both };

struct ExperimentConfig {
  std::string experiment;  ///< example43, elliptic, rlc-simultaneous, rlc-sequential, linear-gaussian
  std::uint64_t seed = 0;
  Index ensemble_size = 0;
  std::vector<Index> ensemble_sweep;  ///< extra sizes for a convergence table
  int pce_degree = 0;
  std::vector<int> pce_sweep;
  std::optional<int> quad_order;
  std::vector<std::string> data_labels;
  std::vector<Vector> data;
  double sigma = 0.5;  ///< noise sd of example43
  RlcNoiseRule noise_rule = RlcNoiseRule::Linear;
  FilterChoice filter = FilterChoice::Both;
  bool reference = true;  ///< compare against exact U^a draws
  std::filesystem::path out = "out";
};

std::vector<std::string> experiment_names();

/// Defaults of a named experiment, seed left at 0.
ExperimentConfig default_config(const std::string& experiment);

/// Applies the fields present in j on top of the experiment's defaults.
/// Data entries are preset names or numeric arrays.
ExperimentConfig config_from_json(const Json& j, const std::string& experiment);

/// Everything that determines the results (no output path).
Json config_to_json(const ExperimentConfig& c);
std::string config_hash(const ExperimentConfig& c);

/// Runs the experiment, writes its files under c.out and returns the
/// summary that was written to summary.json.
Json run_experiment(const ExperimentConfig& c);

/// error.json with the error kind and message.
void write_error_record(const std::filesystem::path& out, const std::string& kind, const std::string& message);

}  // namespace uqkf
