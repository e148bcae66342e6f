#include "qmlp/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qmlp/rng.hpp"

namespace qmlp {

std::vector<int> Dataset::class_counts() const {
  std::vector<int> counts(static_cast<std::size_t>(n_classes), 0);
  for (int label : labels) ++counts[static_cast<std::size_t>(label)];
  return counts;
}

SyntheticFamily synthetic_family_from_name(const std::string& name) {
  if (name == "R1_sq") return SyntheticFamily::R1_sq;
  if (name == "P1_sq") return SyntheticFamily::P1_sq;
  if (name == "R2_sq") return SyntheticFamily::R2_sq;
  if (name == "P2_sq") return SyntheticFamily::P2_sq;
  throw std::invalid_argument("unknown synthetic family: " + name);
}

const char* synthetic_family_name(SyntheticFamily family) {
  switch (family) {
    case SyntheticFamily::R1_sq: return "R1_sq";
    case SyntheticFamily::P1_sq: return "P1_sq";
    case SyntheticFamily::R2_sq: return "R2_sq";
    case SyntheticFamily::P2_sq: return "P2_sq";
  }
  throw std::logic_error("unreachable family");
}

int synthetic_class_count(SyntheticFamily family) {
  return (family == SyntheticFamily::R2_sq || family == SyntheticFamily::P2_sq) ? 3 : 2;
}

int synthetic_label(SyntheticFamily family, double x, double y) {
  switch (family) {
    case SyntheticFamily::R1_sq: {
      return std::hypot(x, y) < 0.6 ? 0 : 1;
    }
    case SyntheticFamily::R2_sq: {
      const double r = std::hypot(x, y);
      if (r < 0.45) return 0;
      return r < 0.8 ? 1 : 2;
    }
    case SyntheticFamily::P1_sq: {
      // Checkerboard by quadrant: I/III -> 0, II/IV -> 1.
      return x * y >= 0.0 ? 0 : 1;
    }
    case SyntheticFamily::P2_sq: {
      const double phi = std::atan2(y, x);
      const int slice = static_cast<int>(std::floor(3.0 * (phi + std::numbers::pi) /
                                                    (2.0 * std::numbers::pi)));
      return std::min(slice, 2);
    }
  }
  throw std::logic_error("unreachable family");
}

bool synthetic_in_margin(SyntheticFamily family, double x, double y) {
  constexpr double radial = 0.08;   // gap half-width around radius thresholds
  constexpr double angular = 0.12;  // gap half-width around sector rays
  switch (family) {
    case SyntheticFamily::R1_sq:
      return std::abs(std::hypot(x, y) - 0.6) < radial;
    case SyntheticFamily::R2_sq: {
      const double r = std::hypot(x, y);
      return std::abs(r - 0.45) < radial || std::abs(r - 0.8) < radial;
    }
    case SyntheticFamily::P1_sq:
      // Boundaries are the coordinate axes.
      return std::min(std::abs(x), std::abs(y)) < radial;
    case SyntheticFamily::P2_sq: {
      if (std::hypot(x, y) < angular) return true;  // all sectors meet at the origin
      const double phi = std::atan2(y, x);
      for (double edge : {-std::numbers::pi, -std::numbers::pi / 3, std::numbers::pi / 3,
                          std::numbers::pi}) {
        if (std::abs(phi - edge) < angular) return true;
      }
      return false;
    }
  }
  throw std::logic_error("unreachable family");
}

namespace {

bool same_point(const Dataset& dataset, double x, double y) {
  for (std::size_t i = 0; i < dataset.n_samples; ++i) {
    if (dataset.feature(i, 0) == x && dataset.feature(i, 1) == y) return true;
  }
  return false;
}

Dataset generate_synthetic_impl(const SyntheticSpec& spec, std::uint64_t seed,
                                const Dataset* exclude) {
  if (spec.samples_per_class < 1) {
    throw std::invalid_argument("samples_per_class must be positive");
  }
  const int n_classes = synthetic_class_count(spec.family);
  Dataset dataset;
  dataset.n_features = 2;
  dataset.n_classes = n_classes;

  std::vector<int> remaining(static_cast<std::size_t>(n_classes), spec.samples_per_class);
  int open_classes = n_classes;
  SplitMix64 rng(seed);
  while (open_classes > 0) {
    const double x = rng.next_in(-1.0, 1.0);
    const double y = rng.next_in(-1.0, 1.0);
    if (synthetic_in_margin(spec.family, x, y)) continue;
    const int label = synthetic_label(spec.family, x, y);
    if (remaining[static_cast<std::size_t>(label)] == 0) continue;
    if (exclude != nullptr && same_point(*exclude, x, y)) continue;
    dataset.features.push_back(x);
    dataset.features.push_back(y);
    dataset.labels.push_back(label);
    if (--remaining[static_cast<std::size_t>(label)] == 0) --open_classes;
  }
  dataset.n_samples = dataset.labels.size();
  return dataset;
}

}  // namespace

Dataset generate_synthetic(const SyntheticSpec& spec) {
  return generate_synthetic_impl(spec, spec.seed, nullptr);
}

std::pair<Dataset, Dataset> train_test_split(const SyntheticSpec& spec, std::uint64_t seed) {
  Dataset train = generate_synthetic_impl(spec, derive_seed(seed, 1), nullptr);
  // The test stream rejects exact coordinate repeats of training points.
  Dataset test = generate_synthetic_impl(spec, derive_seed(seed, 2), &train);
  return {std::move(train), std::move(test)};
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

double parse_double(const std::string& text, const std::string& where) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto result = std::from_chars(begin, end, value);
  if (result.ec != std::errc{} || result.ptr != end) {
    throw std::runtime_error("malformed numeric field '" + text + "' in " + where);
  }
  return value;
}

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

Dataset load_iris(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open iris file: " + path);

  Dataset dataset;
  dataset.n_features = 4;
  std::vector<std::string> class_names;
  std::string line;
  bool first = true;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    ++row;
    const auto fields = split_csv_line(line);
    if (fields.size() != 5) {
      throw std::runtime_error("iris row " + std::to_string(row) + " needs 5 columns");
    }
    if (first) {
      first = false;
      // Optional header row.
      bool numeric_start = true;
      try {
        parse_double(trim(fields[0]), "header probe");
      } catch (const std::runtime_error&) {
        numeric_start = false;
      }
      if (!numeric_start) continue;
    }
    for (int f = 0; f < 4; ++f) {
      dataset.features.push_back(
          parse_double(trim(fields[static_cast<std::size_t>(f)]), "iris row " +
                                                                      std::to_string(row)));
    }
    std::string name = lower(trim(fields[4]));
    if (name.rfind("iris-", 0) == 0) name = name.substr(5);
    if (name != "setosa" && name != "versicolor" && name != "virginica") {
      throw std::runtime_error("unknown iris label '" + fields[4] + "'");
    }
    auto it = std::find(class_names.begin(), class_names.end(), name);
    if (it == class_names.end()) {
      class_names.push_back(name);
      it = class_names.end() - 1;
    }
    dataset.labels.push_back(static_cast<int>(it - class_names.begin()));
  }
  dataset.n_samples = dataset.labels.size();
  dataset.n_classes = static_cast<int>(class_names.size());
  if (dataset.n_samples == 0) throw std::runtime_error("iris file has no data rows: " + path);
  return dataset;
}

Dataset scale_features(const Dataset& dataset, AngleRange target) {
  if (dataset.n_samples == 0) throw std::invalid_argument("cannot scale an empty dataset");
  Dataset scaled = dataset;
  scaled.scaling.scale.assign(dataset.n_features, 1.0);
  scaled.scaling.offset.assign(dataset.n_features, 0.0);

  if (target == AngleRange::minus_pi_to_pi) {
    // Synthetic data is already in [-1, 1]; a fixed multiply maps onto
    // [-pi, pi].
    for (std::size_t f = 0; f < dataset.n_features; ++f) {
      scaled.scaling.scale[f] = std::numbers::pi;
    }
  } else {
    for (std::size_t f = 0; f < dataset.n_features; ++f) {
      double lo = dataset.feature(0, f);
      double hi = lo;
      for (std::size_t i = 1; i < dataset.n_samples; ++i) {
        lo = std::min(lo, dataset.feature(i, f));
        hi = std::max(hi, dataset.feature(i, f));
      }
      if (hi == lo) {
        throw std::invalid_argument("feature " + std::to_string(f) +
                                    " is constant and cannot be min-max scaled");
      }
      scaled.scaling.scale[f] = 2.0 * std::numbers::pi / (hi - lo);
      scaled.scaling.offset[f] = -lo * scaled.scaling.scale[f];
    }
  }
  for (std::size_t i = 0; i < dataset.n_samples; ++i) {
    for (std::size_t f = 0; f < dataset.n_features; ++f) {
      scaled.features[i * dataset.n_features + f] =
          scaled.scaling.apply(f, dataset.feature(i, f));
    }
  }
  return scaled;
}

Dataset apply_scaling(const Dataset& dataset, const ScalingMap& scaling) {
  if (scaling.scale.size() != dataset.n_features) {
    throw std::invalid_argument("scaling map width mismatch");
  }
  Dataset scaled = dataset;
  scaled.scaling = scaling;
  for (std::size_t i = 0; i < dataset.n_samples; ++i) {
    for (std::size_t f = 0; f < dataset.n_features; ++f) {
      scaled.features[i * dataset.n_features + f] = scaling.apply(f, dataset.feature(i, f));
    }
  }
  return scaled;
}

void write_dataset_csv(const Dataset& dataset, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write dataset file: " + path);
  for (std::size_t f = 0; f < dataset.n_features; ++f) out << "f" << (f + 1) << ",";
  out << "label\n";
  char buffer[64];
  for (std::size_t i = 0; i < dataset.n_samples; ++i) {
    for (std::size_t f = 0; f < dataset.n_features; ++f) {
      std::snprintf(buffer, sizeof buffer, "%.17g", dataset.feature(i, f));
      out << buffer << ",";
    }
    out << dataset.labels[i] << "\n";
  }
}

Dataset read_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("dataset file is empty: " + path);
  const auto header = split_csv_line(trim(line));
  if (header.size() < 2 || trim(header.back()) != "label") {
    throw std::runtime_error("dataset header must be f1,...,fn,label");
  }
  Dataset dataset;
  dataset.n_features = header.size() - 1;
  std::size_t row = 1;
  int max_label = -1;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    ++row;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw std::runtime_error("dataset row " + std::to_string(row) + " has wrong column count");
    }
    for (std::size_t f = 0; f < dataset.n_features; ++f) {
      dataset.features.push_back(parse_double(trim(fields[f]), "row " + std::to_string(row)));
    }
    const double label_value =
        parse_double(trim(fields.back()), "label in row " + std::to_string(row));
    const int label = static_cast<int>(label_value);
    if (label < 0 || static_cast<double>(label) != label_value) {
      throw std::runtime_error("label in row " + std::to_string(row) +
                               " must be a nonnegative integer");
    }
    dataset.labels.push_back(label);
    max_label = std::max(max_label, label);
  }
  dataset.n_samples = dataset.labels.size();
  if (dataset.n_samples == 0) throw std::runtime_error("dataset has no rows: " + path);
  dataset.n_classes = max_label + 1;
  for (int count : dataset.class_counts()) {
    if (count == 0) throw std::runtime_error("dataset has an empty class: " + path);
  }
  return dataset;
}

}  // namespace qmlp
