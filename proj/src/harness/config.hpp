#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmlp/dataset.hpp"

namespace qmlp::harness {

/// Usage or configuration problem; the CLI maps it to exit code 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DatasetConfig {
  std::string iris_path;  // non-empty selects the Iris path
  SyntheticSpec synthetic{SyntheticFamily::R1_sq, 90, 7};
  bool is_iris() const { return !iris_path.empty(); }
  std::string tag() const {
    return is_iris() ? "iris" : synthetic_family_name(synthetic.family);
  }
};

struct ArchitectureConfig {
  std::string type = "QMLP";      // "QMLP" or "DeepQMLP"
  std::vector<int> layers = {2};  // L per hidden layer

  int total_layers() const {
    int total = 0;
    for (int l : layers) total += l;
    return total;
  }
};

struct TrainingConfig {
  int epochs = 50;
  int batch_size = 30;
  double learning_rate = 0.5;
  std::vector<std::uint64_t> seeds = {1, 2, 3};
};

struct NoiseSweepConfig {
  double p1 = 0.001;
  double p2 = 0.01;
  std::vector<double> scales = {0.25, 0.5, 1.0, 2.0, 4.0};
  std::optional<int> shots;
  std::uint64_t seed = 1;
};

struct ExperimentConfig {
  DatasetConfig dataset;
  ArchitectureConfig architecture;
  TrainingConfig training;
  NoiseSweepConfig noise_sweep;
  std::string out_dir = "out";
};

/// Parses a config JSON document over the defaults above. Unknown keys and
/// invalid values raise ConfigError.
ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

void validate_config(const ExperimentConfig& config);

/// Resolved-config echo (defaults filled in) for embedding in reports.
std::string config_to_json(const ExperimentConfig& config);

std::string dataset_descriptor_json(const DatasetConfig& dataset);
DatasetConfig dataset_from_descriptor_json(const std::string& text);

std::vector<std::uint64_t> parse_seed_list(const std::string& text);
std::vector<double> parse_scale_list(const std::string& text);

}  // namespace qmlp::harness
