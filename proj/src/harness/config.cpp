#include "config.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace qmlp::harness {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& object, std::initializer_list<const char*> known,
                         const std::string& where) {
  for (const auto& item : object.items()) {
    bool found = false;
    for (const char* key : known) {
      if (item.key() == key) {
        found = true;
        break;
      }
    }
    if (!found) throw ConfigError("unknown key '" + item.key() + "' in " + where);
  }
}

template <typename T>
T get_or(const json& object, const char* key, T fallback) {
  if (!object.contains(key) || object.at(key).is_null()) return fallback;
  try {
    return object.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config root must be a JSON object");
  reject_unknown_keys(doc, {"dataset", "architecture", "training", "noise_sweep", "out_dir"},
                      "config root");

  ExperimentConfig config;
  if (doc.contains("dataset")) {
    const json& d = doc.at("dataset");
    reject_unknown_keys(d, {"family", "iris", "samples_per_class", "seed"}, "dataset");
    if (d.contains("iris") && d.contains("family")) {
      throw ConfigError("dataset takes either 'family' or 'iris', not both");
    }
    if (d.contains("iris")) {
      config.dataset.iris_path = d.at("iris").get<std::string>();
    } else if (d.contains("family")) {
      try {
        config.dataset.synthetic.family =
            synthetic_family_from_name(d.at("family").get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
      const int default_spc =
          synthetic_class_count(config.dataset.synthetic.family) == 2 ? 90 : 60;
      config.dataset.synthetic.samples_per_class =
          get_or<int>(d, "samples_per_class", default_spc);
      config.dataset.synthetic.seed = get_or<std::uint64_t>(d, "seed", 7);
    } else {
      throw ConfigError("dataset needs 'family' or 'iris'");
    }
  }
  if (doc.contains("architecture")) {
    const json& a = doc.at("architecture");
    reject_unknown_keys(a, {"type", "layers"}, "architecture");
    config.architecture.type = get_or<std::string>(a, "type", "QMLP");
    config.architecture.layers = get_or<std::vector<int>>(a, "layers", {2});
  }
  if (doc.contains("training")) {
    const json& t = doc.at("training");
    reject_unknown_keys(t, {"epochs", "batch_size", "learning_rate", "seeds"}, "training");
    config.training.epochs = get_or<int>(t, "epochs", 50);
    config.training.batch_size = get_or<int>(t, "batch_size", 30);
    config.training.learning_rate = get_or<double>(t, "learning_rate", 0.5);
    config.training.seeds = get_or<std::vector<std::uint64_t>>(t, "seeds", {1, 2, 3});
  }
  if (doc.contains("noise_sweep")) {
    const json& s = doc.at("noise_sweep");
    reject_unknown_keys(s, {"p1", "p2", "scales", "shots", "seed"}, "noise_sweep");
    config.noise_sweep.p1 = get_or<double>(s, "p1", 0.001);
    config.noise_sweep.p2 = get_or<double>(s, "p2", 0.01);
    config.noise_sweep.scales =
        get_or<std::vector<double>>(s, "scales", {0.25, 0.5, 1.0, 2.0, 4.0});
    if (s.contains("shots") && !s.at("shots").is_null()) {
      config.noise_sweep.shots = s.at("shots").get<int>();
    }
    config.noise_sweep.seed = get_or<std::uint64_t>(s, "seed", 1);
  }
  config.out_dir = get_or<std::string>(doc, "out_dir", "out");
  validate_config(config);
  return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

void validate_config(const ExperimentConfig& config) {
  const ArchitectureConfig& arch = config.architecture;
  if (arch.type != "QMLP" && arch.type != "DeepQMLP") {
    throw ConfigError("architecture type must be QMLP or DeepQMLP");
  }
  if (arch.type == "QMLP" && arch.layers.size() != 1) {
    throw ConfigError("QMLP has exactly one hidden layer");
  }
  if (arch.type == "DeepQMLP" && arch.layers.size() < 2) {
    throw ConfigError("DeepQMLP needs at least two hidden layers");
  }
  for (int l : arch.layers) {
    if (l < 1) throw ConfigError("every hidden layer needs at least one parametric layer");
  }
  if (config.training.epochs < 0) throw ConfigError("epochs must be nonnegative");
  if (config.training.batch_size < 1) throw ConfigError("batch_size must be positive");
  if (!(config.training.learning_rate > 0)) throw ConfigError("learning_rate must be positive");
  if (config.training.seeds.empty()) throw ConfigError("need at least one seed");
  const NoiseSweepConfig& sweep = config.noise_sweep;
  if (sweep.p1 < 0 || sweep.p1 > 1 || sweep.p2 < 0 || sweep.p2 > 1) {
    throw ConfigError("noise probabilities must lie in [0, 1]");
  }
  for (double s : sweep.scales) {
    if (s < 0) throw ConfigError("noise scales must be nonnegative");
    if (s * sweep.p1 > 1.0 || s * sweep.p2 > 1.0) {
      throw ConfigError("scaled noise probability exceeds 1");
    }
  }
  if (sweep.shots.has_value() && *sweep.shots < 1) throw ConfigError("shots must be positive");
  if (!config.dataset.is_iris() && config.dataset.synthetic.samples_per_class < 1) {
    throw ConfigError("samples_per_class must be positive");
  }
}

std::string dataset_descriptor_json(const DatasetConfig& dataset) {
  json d;
  if (dataset.is_iris()) {
    d["iris"] = dataset.iris_path;
  } else {
    d["family"] = synthetic_family_name(dataset.synthetic.family);
    d["samples_per_class"] = dataset.synthetic.samples_per_class;
    d["seed"] = dataset.synthetic.seed;
  }
  return d.dump();
}

DatasetConfig dataset_from_descriptor_json(const std::string& text) {
  const json d = json::parse(text);
  DatasetConfig dataset;
  if (d.contains("iris")) {
    dataset.iris_path = d.at("iris").get<std::string>();
  } else {
    dataset.synthetic.family = synthetic_family_from_name(d.at("family").get<std::string>());
    dataset.synthetic.samples_per_class = d.at("samples_per_class").get<int>();
    dataset.synthetic.seed = d.at("seed").get<std::uint64_t>();
  }
  return dataset;
}

std::string config_to_json(const ExperimentConfig& config) {
  json doc;
  doc["dataset"] = json::parse(dataset_descriptor_json(config.dataset));
  doc["architecture"] = {{"type", config.architecture.type},
                         {"layers", config.architecture.layers}};
  doc["training"] = {{"epochs", config.training.epochs},
                     {"batch_size", config.training.batch_size},
                     {"learning_rate", config.training.learning_rate},
                     {"seeds", config.training.seeds}};
  json sweep = {{"p1", config.noise_sweep.p1},
                {"p2", config.noise_sweep.p2},
                {"scales", config.noise_sweep.scales},
                {"seed", config.noise_sweep.seed}};
  if (config.noise_sweep.shots.has_value()) {
    sweep["shots"] = *config.noise_sweep.shots;
  } else {
    sweep["shots"] = nullptr;
  }
  doc["noise_sweep"] = sweep;
  doc["out_dir"] = config.out_dir;
  return doc.dump();
}

namespace {

template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& text, Parse parse, const char* what) {
  std::vector<T> values;
  std::istringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item.empty()) continue;
    try {
      values.push_back(parse(item));
    } catch (const std::exception&) {
      throw ConfigError(std::string("bad ") + what + " list entry: " + item);
    }
  }
  if (values.empty()) throw ConfigError(std::string("empty ") + what + " list");
  return values;
}

}  // namespace

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  return parse_list<std::uint64_t>(
      text, [](const std::string& s) { return std::stoull(s); }, "seed");
}

std::vector<double> parse_scale_list(const std::string& text) {
  return parse_list<double>(
      text, [](const std::string& s) { return std::stod(s); }, "scale");
}

}  // namespace qmlp::harness
