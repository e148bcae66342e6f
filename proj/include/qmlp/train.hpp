#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qmlp/model.hpp"

namespace qmlp {

struct TrainOptions {
  int epochs = 50;
  int batch_size = 30;
  double learning_rate = 0.5;
  double adagrad_epsilon = 1e-10;
};

struct EpochStats {
  double loss = 0.0;
  double accuracy = 0.0;
};

using TrainHistory = std::vector<EpochStats>;

/// Draws the initial parameters from the run seed: quantum angles uniform in
/// [-pi, pi], dense weights uniform in [-sqrt(1/n), sqrt(1/n)].
void init_params(HybridModel& model, std::uint64_t seed);

/// Mini-batch Adagrad training: initializes from `seed`, shuffles each epoch
/// with the same seed stream, keeps the final short batch, and records
/// (loss, accuracy) over the full training set noiselessly after every
/// epoch. Bit-deterministic for a given seed.
TrainHistory train(HybridModel& model, const Dataset& dataset, const TrainOptions& options,
                   std::uint64_t seed);

struct EvalResult {
  double loss = 0.0;
  double accuracy = 0.0;
};

/// Mean cross-entropy and argmax accuracy. With `noise`, hidden layers run
/// on the density path (exact or shot-sampled).
EvalResult evaluate(const HybridModel& model, const Dataset& dataset,
                    const std::optional<NoiseConfig>& noise = std::nullopt,
                    std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace qmlp
