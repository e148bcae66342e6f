#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qmlp {

/// Per-feature affine map angle = scale * x + offset, invertible.
struct ScalingMap {
  std::vector<double> scale;
  std::vector<double> offset;

  bool empty() const { return scale.empty(); }
  double apply(std::size_t feature, double x) const { return scale[feature] * x + offset[feature]; }
  double invert(std::size_t feature, double a) const { return (a - offset[feature]) / scale[feature]; }
};

/// Labeled feature matrix. `features` is row major, n_samples x n_features.
/// When `scaling` is non-empty the features are already angles.
struct Dataset {
  std::size_t n_samples = 0;
  std::size_t n_features = 0;
  int n_classes = 0;
  std::vector<double> features;
  std::vector<int> labels;
  ScalingMap scaling;

  double feature(std::size_t sample, std::size_t f) const {
    return features[sample * n_features + f];
  }
  std::span<const double> sample(std::size_t i) const {
    return {features.data() + i * n_features, n_features};
  }
  std::vector<int> class_counts() const;
};

enum class SyntheticFamily { R1_sq, P1_sq, R2_sq, P2_sq };

SyntheticFamily synthetic_family_from_name(const std::string& name);
const char* synthetic_family_name(SyntheticFamily family);
int synthetic_class_count(SyntheticFamily family);

/// 2-feature synthetic dataset request; both features are continuous in
/// [-1, 1]. R-families label by radius (annuli), P-families by angle
/// (quadrant checkerboard / pie slices).
struct SyntheticSpec {
  SyntheticFamily family = SyntheticFamily::R1_sq;
  int samples_per_class = 90;
  std::uint64_t seed = 0;
};

/// Class label of a point under a family's region function.
int synthetic_label(SyntheticFamily family, double x, double y);

/// True when a point falls inside the separation gap kept clear around the
/// class boundaries (the generators emit no samples there).
bool synthetic_in_margin(SyntheticFamily family, double x, double y);

/// Rejection-samples uniform points in [-1,1]^2, skipping the boundary
/// margins, until every class holds exactly samples_per_class points.
/// Deterministic per seed.
Dataset generate_synthetic(const SyntheticSpec& spec);

/// Loads the classic 150-row Iris table: 4 numeric columns plus a species
/// label column, labels mapped to {0,1,2} by first appearance.
Dataset load_iris(const std::string& path);

/// Scaling target for angle encoding.
enum class AngleRange { zero_to_2pi, minus_pi_to_pi };

/// zero_to_2pi: per-feature min-max map onto [0, 2pi] (statistics from this
/// dataset, stored for inference-time reuse). minus_pi_to_pi: fixed
/// multiply-by-pi map for data already in [-1, 1].
Dataset scale_features(const Dataset& dataset, AngleRange target);

/// Applies an existing scaling map (e.g. a training set's statistics) to a
/// raw dataset.
Dataset apply_scaling(const Dataset& dataset, const ScalingMap& scaling);

/// Two disjoint balanced datasets of the same spec drawn from independent
/// seeded streams (synthetic families only).
std::pair<Dataset, Dataset> train_test_split(const SyntheticSpec& spec, std::uint64_t seed);

/// CSV schema: header f1,...,fn,label; 17-significant-digit floats; integer
/// labels.
void write_dataset_csv(const Dataset& dataset, const std::string& path);
Dataset read_dataset_csv(const std::string& path);

}  // namespace qmlp
