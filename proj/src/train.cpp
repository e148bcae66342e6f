#include "qmlp/train.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "qmlp/optimizer.hpp"
#include "qmlp/parallel.hpp"
#include "qmlp/rng.hpp"

namespace qmlp {

namespace {

constexpr std::uint64_t kInitStream = 1;
constexpr std::uint64_t kShuffleStream = 2;

std::vector<Sample> make_samples(const Dataset& dataset) {
  std::vector<Sample> samples;
  samples.reserve(dataset.n_samples);
  for (std::size_t i = 0; i < dataset.n_samples; ++i) {
    samples.push_back({dataset.sample(i), dataset.labels[i]});
  }
  return samples;
}

}  // namespace

void init_params(HybridModel& model, std::uint64_t seed) {
  SplitMix64 rng(derive_seed(seed, kInitStream));
  for (double& p : model.quantum_params) {
    p = rng.next_in(-std::numbers::pi, std::numbers::pi);
  }
  const double bound = std::sqrt(1.0 / static_cast<double>(model.dense.n_in));
  for (double& w : model.dense.weights.data) {
    w = rng.next_in(-bound, bound);
  }
}

TrainHistory train(HybridModel& model, const Dataset& dataset, const TrainOptions& options,
                   std::uint64_t seed) {
  if (dataset.n_samples == 0) throw std::invalid_argument("dataset is empty");
  if (options.batch_size < 1 ||
      static_cast<std::size_t>(options.batch_size) > dataset.n_samples) {
    throw std::invalid_argument("batch size must be in [1, dataset size]");
  }
  if (dataset.n_features != static_cast<std::size_t>(model.n_features()) ||
      dataset.n_classes != model.n_classes()) {
    throw std::invalid_argument("model/dataset dimension mismatch");
  }

  init_params(model, seed);
  AdagradState opt(static_cast<std::size_t>(model.trainable_count()), options.learning_rate,
                   options.adagrad_epsilon);
  SplitMix64 shuffle_rng(derive_seed(seed, kShuffleStream));

  const std::vector<Sample> samples = make_samples(dataset);
  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  TrainHistory history;
  history.reserve(static_cast<std::size_t>(options.epochs));
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    // Fisher-Yates with the run's shuffle stream.
    for (std::size_t i = order.size(); i > 1; --i) {
      const std::size_t j = shuffle_rng.next_below(i);
      std::swap(order[i - 1], order[j]);
    }
    for (std::size_t start = 0; start < order.size();
         start += static_cast<std::size_t>(options.batch_size)) {
      const std::size_t stop =
          std::min(order.size(), start + static_cast<std::size_t>(options.batch_size));
      std::vector<Sample> batch;
      batch.reserve(stop - start);
      for (std::size_t i = start; i < stop; ++i) batch.push_back(samples[order[i]]);
      const std::vector<double> grads = backward(model, batch);
      std::vector<double> values = get_trainables(model);
      adagrad_step(values, grads, opt);
      set_trainables(model, values);
    }
    const EvalResult metrics = evaluate(model, dataset);
    history.push_back({metrics.loss, metrics.accuracy});
  }
  return history;
}

EvalResult evaluate(const HybridModel& model, const Dataset& dataset,
                    const std::optional<NoiseConfig>& noise, std::optional<std::uint64_t> seed) {
  if (dataset.n_samples == 0) throw std::invalid_argument("dataset is empty");
  if (dataset.n_features != static_cast<std::size_t>(model.n_features()) ||
      dataset.n_classes != model.n_classes()) {
    throw std::invalid_argument("model/dataset dimension mismatch");
  }
  if (noise.has_value() && noise->shots.has_value() && !seed.has_value()) {
    throw std::invalid_argument("shot-sampled evaluation requires a seed");
  }

  std::vector<double> losses(dataset.n_samples);
  std::vector<int> correct(dataset.n_samples);
  indexed_loop_dynamic(dataset.n_samples, 2, [&](std::size_t i) {
    std::vector<double> probs;
    if (noise.has_value()) {
      std::optional<std::uint64_t> sample_seed;
      if (noise->shots.has_value()) sample_seed = derive_seed(*seed, i);
      probs = forward_noisy(model, dataset.sample(i), *noise, sample_seed);
    } else {
      probs = forward(model, dataset.sample(i));
    }
    losses[i] = cross_entropy_loss(probs, dataset.labels[i]);
    correct[i] = predicted_class(probs) == dataset.labels[i] ? 1 : 0;
  });

  double loss = 0.0;
  long hits = 0;
  for (std::size_t i = 0; i < dataset.n_samples; ++i) {
    loss += losses[i];
    hits += correct[i];
  }
  return {loss / static_cast<double>(dataset.n_samples),
          static_cast<double>(hits) / static_cast<double>(dataset.n_samples)};
}

}  // namespace qmlp
