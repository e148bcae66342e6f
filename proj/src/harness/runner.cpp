#include "runner.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qmlp/rng.hpp"

namespace qmlp::harness {

using nlohmann::json;

namespace {

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

void ensure_parent_dir(const std::string& path) {
  const std::filesystem::path parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
}

}  // namespace

MaterializedData materialize_dataset(const DatasetConfig& dataset) {
  MaterializedData data;
  data.tag = dataset.tag();
  if (dataset.is_iris()) {
    const Dataset raw = load_iris(dataset.iris_path);
    data.train = scale_features(raw, AngleRange::zero_to_2pi);
    return data;
  }
  auto [train_raw, test_raw] = train_test_split(dataset.synthetic, dataset.synthetic.seed);
  data.train = scale_features(train_raw, AngleRange::minus_pi_to_pi);
  data.test = apply_scaling(test_raw, data.train.scaling);
  return data;
}

std::string make_model_id(const ExperimentConfig& config, std::uint64_t seed) {
  std::ostringstream id;
  id << config.dataset.tag() << "_" << config.architecture.type << "_L";
  for (std::size_t i = 0; i < config.architecture.layers.size(); ++i) {
    if (i > 0) id << "x";
    id << config.architecture.layers[i];
  }
  id << "_s" << seed;
  return id.str();
}

void write_history_csv(const TrainHistory& history, const std::string& path) {
  ensure_parent_dir(path);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write history file: " + path);
  out << "epoch,loss,accuracy\n";
  for (std::size_t i = 0; i < history.size(); ++i) {
    out << (i + 1) << "," << format_double(history[i].loss) << ","
        << format_double(history[i].accuracy) << "\n";
  }
}

TrainHistory read_history_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open history file: " + path);
  std::string line;
  if (!std::getline(in, line) || line != "epoch,loss,accuracy") {
    throw std::runtime_error("bad history header in " + path);
  }
  TrainHistory history;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string epoch, loss, accuracy;
    if (!std::getline(row, epoch, ',') || !std::getline(row, loss, ',') ||
        !std::getline(row, accuracy, ',')) {
      throw std::runtime_error("bad history row in " + path);
    }
    history.push_back({std::stod(loss), std::stod(accuracy)});
  }
  return history;
}

std::vector<TrainedArtifact> cmd_train(const ExperimentConfig& config) {
  validate_config(config);
  const MaterializedData data = materialize_dataset(config.dataset);
  std::filesystem::create_directories(config.out_dir);

  std::vector<TrainedArtifact> artifacts;
  for (std::uint64_t seed : config.training.seeds) {
    HybridModel model = make_model(static_cast<int>(data.train.n_features),
                                   config.architecture.layers, data.train.n_classes);
    model.input_scaling = data.train.scaling;

    TrainOptions options;
    options.epochs = config.training.epochs;
    options.batch_size = config.training.batch_size;
    options.learning_rate = config.training.learning_rate;
    const TrainHistory history = train(model, data.train, options, seed);

    TrainedArtifact artifact;
    artifact.model_id = make_model_id(config, seed);
    artifact.model_path = config.out_dir + "/" + artifact.model_id + ".model.json";
    artifact.history_path = config.out_dir + "/" + artifact.model_id + ".history.csv";
    artifact.history = history;

    ModelMetadata meta;
    meta.model_id = artifact.model_id;
    meta.training_seed = seed;
    meta.dataset_json = dataset_descriptor_json(config.dataset);
    meta.config_json = config_to_json(config);
    save_model(model, meta, artifact.model_path);
    write_history_csv(history, artifact.history_path);
    artifacts.push_back(std::move(artifact));
  }
  return artifacts;
}

namespace {

struct LoadedModel {
  HybridModel model;
  ModelMetadata meta;
  Dataset train;
  std::optional<Dataset> test;
};

LoadedModel load_model_with_data(const std::string& path) {
  LoadedModel loaded;
  loaded.model = load_model(path, &loaded.meta);
  if (loaded.meta.dataset_json.empty()) {
    throw std::runtime_error("model file lacks a dataset descriptor: " + path);
  }
  const DatasetConfig dataset = dataset_from_descriptor_json(loaded.meta.dataset_json);
  if (dataset.is_iris()) {
    const Dataset raw = load_iris(dataset.iris_path);
    loaded.train = apply_scaling(raw, loaded.model.input_scaling);
  } else {
    auto [train_raw, test_raw] = train_test_split(dataset.synthetic, dataset.synthetic.seed);
    loaded.train = apply_scaling(train_raw, loaded.model.input_scaling);
    loaded.test = apply_scaling(test_raw, loaded.model.input_scaling);
  }
  return loaded;
}

}  // namespace

std::vector<SweepRow> cmd_noise_sweep(const std::vector<std::string>& model_paths,
                                      const ExperimentConfig& config,
                                      const std::string& out_csv) {
  if (model_paths.empty()) throw ConfigError("noise sweep needs at least one model file");
  const NoiseSweepConfig& sweep = config.noise_sweep;

  std::vector<LoadedModel> models;
  models.reserve(model_paths.size());
  for (const std::string& path : model_paths) models.push_back(load_model_with_data(path));

  const std::size_t n_items = models.size() * sweep.scales.size();
  std::vector<SweepRow> rows(n_items);
  // (model, scale) items are independent; each writes its own slot.
#pragma omp parallel for schedule(dynamic)
  for (std::size_t item = 0; item < n_items; ++item) {
    const std::size_t m = item / sweep.scales.size();
    const std::size_t s = item % sweep.scales.size();
    NoiseConfig noise;
    noise.p1 = sweep.p1;
    noise.p2 = sweep.p2;
    noise.scale = sweep.scales[s];
    noise.shots = sweep.shots;
    std::optional<std::uint64_t> seed;
    if (sweep.shots.has_value()) seed = derive_seed(sweep.seed, item);
    const EvalResult result = evaluate(models[m].model, models[m].train, noise, seed);
    rows[item] = {models[m].meta.model_id, sweep.scales[s], result.loss, result.accuracy};
  }

  std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    if (a.model_id != b.model_id) return a.model_id < b.model_id;
    return a.scale < b.scale;
  });

  ensure_parent_dir(out_csv);
  std::ofstream out(out_csv);
  if (!out) throw std::runtime_error("cannot write sweep file: " + out_csv);
  out << "model_id,scale,loss,accuracy\n";
  for (const SweepRow& row : rows) {
    out << row.model_id << "," << format_double(row.scale) << "," << format_double(row.loss)
        << "," << format_double(row.accuracy) << "\n";
  }
  return rows;
}

void cmd_compare(const std::vector<std::string>& qmlp_paths,
                 const std::vector<std::string>& deepqmlp_paths, const ExperimentConfig& config,
                 const std::string& out_json) {
  if (qmlp_paths.empty()) throw ConfigError("compare needs at least one model per side");
  if (qmlp_paths.size() != deepqmlp_paths.size()) {
    throw std::runtime_error("compare needs equally many QMLP and DeepQMLP models");
  }

  auto load_side = [](const std::vector<std::string>& paths, std::size_t expect_hidden_min,
                      std::size_t expect_hidden_max, const char* side) {
    std::vector<LoadedModel> models;
    for (const std::string& path : paths) {
      LoadedModel loaded = load_model_with_data(path);
      const std::size_t n_hidden = loaded.model.hidden.size();
      if (n_hidden < expect_hidden_min || n_hidden > expect_hidden_max) {
        throw std::runtime_error(std::string(path) + " is not a " + side + " model");
      }
      models.push_back(std::move(loaded));
    }
    // Deterministic pairing order.
    std::sort(models.begin(), models.end(), [](const LoadedModel& a, const LoadedModel& b) {
      return a.meta.model_id < b.meta.model_id;
    });
    return models;
  };
  std::vector<LoadedModel> qmlp = load_side(qmlp_paths, 1, 1, "QMLP");
  std::vector<LoadedModel> deep = load_side(deepqmlp_paths, 2, SIZE_MAX, "DeepQMLP");

  json pairs = json::array();
  for (std::size_t i = 0; i < qmlp.size(); ++i) {
    if (qmlp[i].meta.dataset_json != deep[i].meta.dataset_json) {
      throw std::runtime_error("pair " + std::to_string(i) +
                               " mixes datasets: " + qmlp[i].meta.model_id + " vs " +
                               deep[i].meta.model_id);
    }
    if (qmlp[i].model.trainable_count() != deep[i].model.trainable_count()) {
      throw std::runtime_error("pair " + std::to_string(i) +
                               " has mismatched trainable counts: " + qmlp[i].meta.model_id +
                               " vs " + deep[i].meta.model_id);
    }
    pairs.push_back({{"qmlp", qmlp[i].meta.model_id},
                     {"deepqmlp", deep[i].meta.model_id},
                     {"trainables", qmlp[i].model.trainable_count()}});
  }

  const NoiseSweepConfig& sweep = config.noise_sweep;
  struct ScaleMeans {
    double qmlp_loss = 0, qmlp_acc = 0, deep_loss = 0, deep_acc = 0;
  };
  std::vector<ScaleMeans> means(sweep.scales.size());

  const std::size_t n_items = 2 * qmlp.size() * sweep.scales.size();
  std::vector<EvalResult> results(n_items);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t item = 0; item < n_items; ++item) {
    const std::size_t side = item % 2;
    const std::size_t m = (item / 2) / sweep.scales.size();
    const std::size_t s = (item / 2) % sweep.scales.size();
    NoiseConfig noise;
    noise.p1 = sweep.p1;
    noise.p2 = sweep.p2;
    noise.scale = sweep.scales[s];
    noise.shots = sweep.shots;
    std::optional<std::uint64_t> seed;
    if (sweep.shots.has_value()) seed = derive_seed(sweep.seed, item);
    const LoadedModel& loaded = side == 0 ? qmlp[m] : deep[m];
    results[item] = evaluate(loaded.model, loaded.train, noise, seed);
  }
  for (std::size_t m = 0; m < qmlp.size(); ++m) {
    for (std::size_t s = 0; s < sweep.scales.size(); ++s) {
      const EvalResult& rq = results[2 * (m * sweep.scales.size() + s)];
      const EvalResult& rd = results[2 * (m * sweep.scales.size() + s) + 1];
      means[s].qmlp_loss += rq.loss;
      means[s].qmlp_acc += rq.accuracy;
      means[s].deep_loss += rd.loss;
      means[s].deep_acc += rd.accuracy;
    }
  }

  json per_scale = json::array();
  const double inv = 1.0 / static_cast<double>(qmlp.size());
  for (std::size_t s = 0; s < sweep.scales.size(); ++s) {
    const ScaleMeans& m = means[s];
    const double ql = m.qmlp_loss * inv;
    const double qa = m.qmlp_acc * inv;
    const double dl = m.deep_loss * inv;
    const double da = m.deep_acc * inv;
    per_scale.push_back({{"scale", sweep.scales[s]},
                         {"qmlp", {{"loss", ql}, {"accuracy", qa}}},
                         {"deepqmlp", {{"loss", dl}, {"accuracy", da}}},
                         {"delta", {{"loss", dl - ql}, {"accuracy", da - qa}}},
                         {"relative_loss_reduction", ql > 0 ? (ql - dl) / ql : 0.0}});
  }

  // Per-model block: noiseless train/test baselines plus the swept rows.
  json model_reports = json::array();
  auto describe_model = [&](const LoadedModel& loaded, std::size_t offset) {
    json entry;
    entry["model_id"] = loaded.meta.model_id;
    entry["trainables"] = loaded.model.trainable_count();
    const EvalResult train_eval = evaluate(loaded.model, loaded.train);
    entry["noiseless_train"] = {{"loss", train_eval.loss}, {"accuracy", train_eval.accuracy}};
    if (loaded.test.has_value()) {
      const EvalResult test_eval = evaluate(loaded.model, *loaded.test);
      entry["noiseless_test"] = {{"loss", test_eval.loss}, {"accuracy", test_eval.accuracy}};
    }
    json swept = json::array();
    for (std::size_t s = 0; s < sweep.scales.size(); ++s) {
      const EvalResult& r = results[offset + 2 * s];
      swept.push_back(
          {{"scale", sweep.scales[s]}, {"loss", r.loss}, {"accuracy", r.accuracy}});
    }
    entry["noisy_train"] = swept;
    model_reports.push_back(entry);
  };
  for (std::size_t m = 0; m < qmlp.size(); ++m) {
    describe_model(qmlp[m], 2 * m * sweep.scales.size());
    describe_model(deep[m], 2 * m * sweep.scales.size() + 1);
  }

  json doc;
  doc["config"] = json::parse(config_to_json(config));
  doc["pairs"] = pairs;
  doc["per_scale"] = per_scale;
  doc["models"] = model_reports;

  ensure_parent_dir(out_json);
  std::ofstream out(out_json);
  if (!out) throw std::runtime_error("cannot write comparison file: " + out_json);
  out << doc.dump(2) << "\n";
}

void cmd_gen_data(const std::string& family, int samples_per_class, std::uint64_t seed,
                  const std::string& out_csv) {
  SyntheticSpec spec;
  try {
    spec.family = synthetic_family_from_name(family);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (samples_per_class < 1) throw ConfigError("samples_per_class must be positive");
  spec.samples_per_class = samples_per_class;
  spec.seed = seed;
  ensure_parent_dir(out_csv);
  write_dataset_csv(generate_synthetic(spec), out_csv);
}

}  // namespace qmlp::harness
