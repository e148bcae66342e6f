#include "qmlp/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qmlp/parallel.hpp"
#include "qmlp/rng.hpp"

namespace qmlp {

using nlohmann::json;

int HybridModel::quantum_param_count() const {
  int total = 0;
  for (const HiddenLayerSpec& layer : hidden) total += layer.param_count();
  return total;
}

int HybridModel::trainable_count() const {
  return quantum_param_count() + dense.n_in * dense.n_out;
}

std::span<const double> HybridModel::layer_params(std::size_t layer) const {
  std::size_t offset = 0;
  for (std::size_t i = 0; i < layer; ++i) {
    offset += static_cast<std::size_t>(hidden[i].param_count());
  }
  return std::span<const double>(quantum_params)
      .subspan(offset, static_cast<std::size_t>(hidden[layer].param_count()));
}

HybridModel make_model(int n_features, const std::vector<int>& layers_per_hidden, int n_classes) {
  if (layers_per_hidden.empty()) throw std::invalid_argument("need at least one hidden layer");
  if (n_classes < 2) throw std::invalid_argument("need at least two classes");
  HybridModel model;
  for (int layers : layers_per_hidden) {
    // Every hidden layer re-encodes n expectations into n qubits, so all
    // layers share the input width.
    HiddenLayerSpec spec{n_features, layers};
    model.hidden.push_back(spec);
    model.circuits.push_back(build_hidden_layer(spec));
  }
  model.quantum_params.assign(static_cast<std::size_t>(model.quantum_param_count()), 0.0);
  model.dense.n_in = n_features;
  model.dense.n_out = n_classes;
  model.dense.weights = RealMatrix(static_cast<std::size_t>(n_classes),
                                   static_cast<std::size_t>(n_features));
  return model;
}

namespace {

std::vector<double> softmax(const std::vector<double>& logits) {
  double max_logit = logits[0];
  for (double v : logits) max_logit = std::max(max_logit, v);
  std::vector<double> probs(logits.size());
  double total = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    probs[i] = std::exp(logits[i] - max_logit);
    total += probs[i];
  }
  for (double& p : probs) p /= total;
  return probs;
}

std::vector<double> dense_logits(const DenseLayer& dense, std::span<const double> features) {
  std::vector<double> logits(static_cast<std::size_t>(dense.n_out), 0.0);
  for (std::size_t r = 0; r < static_cast<std::size_t>(dense.n_out); ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < static_cast<std::size_t>(dense.n_in); ++c) {
      acc += dense.weights.at(r, c) * features[c];
    }
    logits[r] = acc;
  }
  return logits;
}

void check_features(const HybridModel& model, std::span<const double> features) {
  if (features.size() != static_cast<std::size_t>(model.n_features())) {
    throw std::invalid_argument("feature vector length mismatch");
  }
}

}  // namespace

std::vector<double> forward(const HybridModel& model, std::span<const double> features,
                            ForwardTrace& trace) {
  check_features(model, features);
  trace.layer_inputs.clear();
  trace.expectations.clear();
  std::vector<double> angles(features.begin(), features.end());
  for (std::size_t layer = 0; layer < model.hidden.size(); ++layer) {
    trace.layer_inputs.push_back(angles);
    std::vector<double> e =
        eval_hidden_layer(model.circuits[layer], angles, model.layer_params(layer));
    trace.expectations.push_back(e);
    if (layer + 1 < model.hidden.size()) {
      for (double& v : e) v *= model.interlayer_scaling;
      angles = std::move(e);
    }
  }
  trace.probs = softmax(dense_logits(model.dense, trace.expectations.back()));
  return trace.probs;
}

std::vector<double> forward(const HybridModel& model, std::span<const double> features) {
  ForwardTrace trace;
  return forward(model, features, trace);
}

std::vector<double> forward_noisy(const HybridModel& model, std::span<const double> features,
                                  const NoiseConfig& noise, std::optional<std::uint64_t> seed) {
  check_features(model, features);
  std::vector<double> angles(features.begin(), features.end());
  std::vector<double> expectations;
  for (std::size_t layer = 0; layer < model.hidden.size(); ++layer) {
    std::optional<std::uint64_t> layer_seed;
    if (noise.shots.has_value()) {
      if (!seed.has_value()) throw std::invalid_argument("shot-sampled forward requires a seed");
      layer_seed = derive_seed(*seed, static_cast<std::uint64_t>(layer));
    }
    expectations =
        eval_hidden_layer(model.circuits[layer], angles, model.layer_params(layer), noise,
                          layer_seed);
    if (layer + 1 < model.hidden.size()) {
      angles = expectations;
      for (double& v : angles) v *= model.interlayer_scaling;
    }
  }
  return softmax(dense_logits(model.dense, expectations));
}

double cross_entropy_loss(std::span<const double> probs, int label) {
  if (label < 0 || static_cast<std::size_t>(label) >= probs.size()) {
    throw std::out_of_range("label out of range");
  }
  const double p = std::max(probs[static_cast<std::size_t>(label)], 1e-12);
  return -std::log(p);
}

int predicted_class(std::span<const double> probs) {
  int best = 0;
  for (std::size_t i = 1; i < probs.size(); ++i) {
    if (probs[i] > probs[static_cast<std::size_t>(best)]) best = static_cast<int>(i);
  }
  return best;
}

namespace {

// Per-sample gradient, laid out [quantum params per layer, dense weights].
std::vector<double> sample_gradient(const HybridModel& model, const Sample& sample) {
  const std::size_t n = static_cast<std::size_t>(model.n_features());
  const std::size_t m = static_cast<std::size_t>(model.n_classes());
  const std::size_t total = static_cast<std::size_t>(model.trainable_count());

  ForwardTrace trace;
  forward(model, sample.features, trace);

  std::vector<double> grad(total, 0.0);

  // Softmax cross-entropy: d loss / d logits = probs - onehot(label).
  std::vector<double> delta(trace.probs);
  delta[static_cast<std::size_t>(sample.label)] -= 1.0;

  const std::vector<double>& last_e = trace.expectations.back();
  const std::size_t dense_offset = static_cast<std::size_t>(model.quantum_param_count());
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      grad[dense_offset + r * n + c] = delta[r] * last_e[c];
    }
  }

  // d loss / d expectations of the last hidden layer.
  std::vector<double> g(n, 0.0);
  for (std::size_t c = 0; c < n; ++c) {
    double acc = 0.0;
    for (std::size_t r = 0; r < m; ++r) acc += model.dense.weights.at(r, c) * delta[r];
    g[c] = acc;
  }

  // Walk hidden layers backwards, chaining through the shift-rule Jacobians.
  std::size_t param_offset = static_cast<std::size_t>(model.quantum_param_count());
  for (std::size_t layer = model.hidden.size(); layer-- > 0;) {
    const std::size_t p_count = static_cast<std::size_t>(model.hidden[layer].param_count());
    param_offset -= p_count;
    const LayerJacobians jac = parameter_shift_gradient(
        model.circuits[layer], trace.layer_inputs[layer], model.layer_params(layer));
    for (std::size_t s = 0; s < p_count; ++s) {
      double acc = 0.0;
      for (std::size_t q = 0; q < n; ++q) acc += jac.d_out_d_params.at(q, s) * g[q];
      grad[param_offset + s] = acc;
    }
    if (layer > 0) {
      std::vector<double> g_prev(n, 0.0);
      for (std::size_t s = 0; s < n; ++s) {
        double acc = 0.0;
        for (std::size_t q = 0; q < n; ++q) acc += jac.d_out_d_inputs.at(q, s) * g[q];
        // The previous layer's expectations were scaled before re-encoding.
        g_prev[s] = model.interlayer_scaling * acc;
      }
      g = std::move(g_prev);
    }
  }
  return grad;
}

}  // namespace

std::vector<double> backward(const HybridModel& model, std::span<const Sample> batch) {
  if (batch.empty()) throw std::invalid_argument("batch must be non-empty");
  const std::size_t total = static_cast<std::size_t>(model.trainable_count());
  std::vector<std::vector<double>> per_sample(batch.size());

  indexed_loop_dynamic(batch.size(), 2, [&](std::size_t i) {
    per_sample[i] = sample_gradient(model, batch[i]);
  });

  // Fixed summation order keeps the reduction independent of the schedule.
  std::vector<double> mean(total, 0.0);
  for (const std::vector<double>& g : per_sample) {
    for (std::size_t j = 0; j < total; ++j) mean[j] += g[j];
  }
  const double inv = 1.0 / static_cast<double>(batch.size());
  for (double& v : mean) v *= inv;
  return mean;
}

double batch_loss(const HybridModel& model, std::span<const Sample> batch) {
  if (batch.empty()) throw std::invalid_argument("batch must be non-empty");
  double total = 0.0;
  for (const Sample& sample : batch) {
    total += cross_entropy_loss(forward(model, sample.features), sample.label);
  }
  return total / static_cast<double>(batch.size());
}

std::vector<double> get_trainables(const HybridModel& model) {
  std::vector<double> values(model.quantum_params);
  values.insert(values.end(), model.dense.weights.data.begin(), model.dense.weights.data.end());
  return values;
}

void set_trainables(HybridModel& model, std::span<const double> values) {
  if (values.size() != static_cast<std::size_t>(model.trainable_count())) {
    throw std::invalid_argument("trainable vector length mismatch");
  }
  const std::size_t q = static_cast<std::size_t>(model.quantum_param_count());
  std::copy(values.begin(), values.begin() + static_cast<long>(q), model.quantum_params.begin());
  std::copy(values.begin() + static_cast<long>(q), values.end(),
            model.dense.weights.data.begin());
}

void save_model(const HybridModel& model, const ModelMetadata& meta, const std::string& path) {
  json arch;
  arch["type"] = model.hidden.size() == 1 ? "QMLP" : "DeepQMLP";
  arch["n_classes"] = model.n_classes();
  json layers = json::array();
  for (const HiddenLayerSpec& layer : model.hidden) {
    layers.push_back({{"n_qubits", layer.n_qubits}, {"n_layers", layer.n_parametric_layers}});
  }
  arch["hidden"] = layers;

  json doc;
  doc["format"] = "qmlp-model-v1";
  doc["model_id"] = meta.model_id;
  doc["architecture"] = arch;
  doc["quantum_params"] = model.quantum_params;
  json rows = json::array();
  for (std::size_t r = 0; r < static_cast<std::size_t>(model.dense.n_out); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < static_cast<std::size_t>(model.dense.n_in); ++c) {
      row.push_back(model.dense.weights.at(r, c));
    }
    rows.push_back(row);
  }
  doc["dense_weights"] = rows;
  doc["input_scaling"] = {{"scale", model.input_scaling.scale},
                          {"offset", model.input_scaling.offset}};
  doc["interlayer_scaling"] = model.interlayer_scaling;
  doc["training_seed"] = meta.training_seed;
  if (!meta.dataset_json.empty()) doc["dataset"] = json::parse(meta.dataset_json);
  if (!meta.config_json.empty()) doc["config"] = json::parse(meta.config_json);
  json circuits = json::array();
  for (const CircuitSpec& circuit : model.circuits) {
    circuits.push_back(json::parse(circuit_to_json(circuit)));
  }
  doc["circuits"] = circuits;

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write model file: " + path);
  out << doc.dump(2) << "\n";
}

HybridModel load_model(const std::string& path, ModelMetadata* meta) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read model file: " + path);
  json doc;
  in >> doc;
  if (doc.value("format", "") != "qmlp-model-v1") {
    throw std::runtime_error("unrecognized model format in " + path);
  }

  const json& arch = doc.at("architecture");
  std::vector<int> layers;
  int n_features = 0;
  for (const json& layer : arch.at("hidden")) {
    layers.push_back(layer.at("n_layers").get<int>());
    const int n_qubits = layer.at("n_qubits").get<int>();
    // Stacked layers re-encode expectations one-to-one, so widths must agree.
    if (n_features != 0 && n_qubits != n_features) {
      throw std::runtime_error("hidden layers disagree on qubit count in " + path);
    }
    n_features = n_qubits;
  }
  HybridModel model = make_model(n_features, layers, arch.at("n_classes").get<int>());
  model.quantum_params = doc.at("quantum_params").get<std::vector<double>>();
  if (model.quantum_params.size() != static_cast<std::size_t>(model.quantum_param_count())) {
    throw std::runtime_error("model parameter count mismatch in " + path);
  }
  const json& rows = doc.at("dense_weights");
  for (std::size_t r = 0; r < static_cast<std::size_t>(model.dense.n_out); ++r) {
    for (std::size_t c = 0; c < static_cast<std::size_t>(model.dense.n_in); ++c) {
      model.dense.weights.at(r, c) = rows.at(r).at(c).get<double>();
    }
  }
  model.input_scaling.scale = doc.at("input_scaling").at("scale").get<std::vector<double>>();
  model.input_scaling.offset = doc.at("input_scaling").at("offset").get<std::vector<double>>();
  model.interlayer_scaling = doc.at("interlayer_scaling").get<double>();
  if (meta != nullptr) {
    meta->model_id = doc.value("model_id", "");
    meta->training_seed = doc.value("training_seed", std::uint64_t{0});
    meta->dataset_json = doc.contains("dataset") ? doc.at("dataset").dump() : "";
    meta->config_json = doc.contains("config") ? doc.at("config").dump() : "";
  }
  return model;
}

}  // namespace qmlp
