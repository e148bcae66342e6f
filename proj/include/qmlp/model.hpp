#pragma once

#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "qmlp/circuit.hpp"
#include "qmlp/dataset.hpp"
#include "qmlp/gradients.hpp"
#include "qmlp/matrix.hpp"

namespace qmlp {

/// Classical dense output layer, no bias: logits = weights * features.
struct DenseLayer {
  int n_in = 0;
  int n_out = 0;
  RealMatrix weights;  // n_out x n_in
};

/// Hybrid network: one or more quantum hidden layers feeding a classical
/// softmax layer. QMLP has exactly one hidden layer; DeepQMLP stacks two or
/// more, re-encoding each layer's Pauli-Z expectations (times
/// interlayer_scaling) as the next layer's input angles.
struct HybridModel {
  std::vector<HiddenLayerSpec> hidden;
  std::vector<CircuitSpec> circuits;     // one per hidden layer
  std::vector<double> quantum_params;    // concatenated across layers
  DenseLayer dense;
  ScalingMap input_scaling;              // copied from the training dataset
  double interlayer_scaling = std::numbers::pi;

  int n_features() const { return hidden.front().n_qubits; }
  int n_classes() const { return dense.n_out; }
  int quantum_param_count() const;
  int trainable_count() const;  // sum of 2*n*L per layer + n*m

  /// Slice of quantum_params belonging to hidden layer `layer`.
  std::span<const double> layer_params(std::size_t layer) const;
};

/// Builds a model with zeroed parameters. `layers_per_hidden` holds L for
/// each hidden layer (one entry for QMLP, >= 2 for DeepQMLP); every hidden
/// layer uses n_qubits = n_features.
HybridModel make_model(int n_features, const std::vector<int>& layers_per_hidden, int n_classes);

/// Intermediate values of one forward pass, kept for backprop.
struct ForwardTrace {
  std::vector<std::vector<double>> layer_inputs;   // angles fed to each layer
  std::vector<std::vector<double>> expectations;   // each layer's output
  std::vector<double> probs;
};

/// Class probability vector for already-scaled feature angles. Noiseless.
std::vector<double> forward(const HybridModel& model, std::span<const double> features);
std::vector<double> forward(const HybridModel& model, std::span<const double> features,
                            ForwardTrace& trace);

/// Noisy forward: every hidden layer evaluated on the density path.
std::vector<double> forward_noisy(const HybridModel& model, std::span<const double> features,
                                  const NoiseConfig& noise,
                                  std::optional<std::uint64_t> seed = std::nullopt);

/// -ln(probs[label]) with probs clamped to >= 1e-12 before the log.
double cross_entropy_loss(std::span<const double> probs, int label);

/// Argmax with deterministic ties (lowest class index wins).
int predicted_class(std::span<const double> probs);

struct Sample {
  std::span<const double> features;
  int label;
};

/// Mean loss gradient over a batch with respect to every trainable, ordered
/// [quantum params per layer, dense weights row major]. Dense gradients use
/// the softmax cross-entropy closed form; quantum gradients chain through
/// per-layer shift-rule Jacobians (interlayer scaling included).
std::vector<double> backward(const HybridModel& model, std::span<const Sample> batch);

/// Mean loss over the batch at the current parameters.
double batch_loss(const HybridModel& model, std::span<const Sample> batch);

/// Flat trainable vector get/set, same ordering as backward().
std::vector<double> get_trainables(const HybridModel& model);
void set_trainables(HybridModel& model, std::span<const double> values);

/// Lossless JSON round trip (includes architecture, parameters, scaling
/// metadata, training seed, and a dataset descriptor when present).
struct ModelMetadata {
  std::string model_id;
  std::uint64_t training_seed = 0;
  std::string dataset_json;  // resolved dataset descriptor, may be empty
  std::string config_json;   // resolved experiment config echo, may be empty
};

void save_model(const HybridModel& model, const ModelMetadata& meta, const std::string& path);
HybridModel load_model(const std::string& path, ModelMetadata* meta = nullptr);

}  // namespace qmlp
