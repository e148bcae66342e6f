#pragma once

#include <string>
#include <vector>

#include "config.hpp"
#include "qmlp/model.hpp"
#include "qmlp/train.hpp"

namespace qmlp::harness {

/// Train-ready dataset bundle built from a descriptor: scaled training set,
/// optional scaled test set (synthetic families only), and the raw training
/// set for scaling-map reuse.
struct MaterializedData {
  Dataset train;
  std::optional<Dataset> test;
  std::string tag;
};

MaterializedData materialize_dataset(const DatasetConfig& dataset);

std::string make_model_id(const ExperimentConfig& config, std::uint64_t seed);

struct TrainedArtifact {
  std::string model_path;
  std::string history_path;
  std::string model_id;
  TrainHistory history;
};

/// Trains one model per configured seed and writes <id>.model.json and
/// <id>.history.csv under out_dir.
std::vector<TrainedArtifact> cmd_train(const ExperimentConfig& config);

struct SweepRow {
  std::string model_id;
  double scale = 0.0;
  double loss = 0.0;
  double accuracy = 0.0;
};

/// Evaluates every model on its own training data at every noise scale and
/// writes sweep.csv (model_id,scale,loss,accuracy), rows sorted by
/// (model_id, scale).
std::vector<SweepRow> cmd_noise_sweep(const std::vector<std::string>& model_paths,
                                      const ExperimentConfig& config,
                                      const std::string& out_csv);

/// Pairs QMLP and DeepQMLP models (same dataset, same trainable count),
/// evaluates both sides across the noise scales, and writes a JSON report
/// with per-scale means and paired deltas.
void cmd_compare(const std::vector<std::string>& qmlp_paths,
                 const std::vector<std::string>& deepqmlp_paths, const ExperimentConfig& config,
                 const std::string& out_json);

/// Generates a synthetic dataset CSV.
void cmd_gen_data(const std::string& family, int samples_per_class, std::uint64_t seed,
                  const std::string& out_csv);

void write_history_csv(const TrainHistory& history, const std::string& path);
TrainHistory read_history_csv(const std::string& path);

}  // namespace qmlp::harness
