#pragma once

#include <span>
#include <vector>

namespace qmlp {

/// Adagrad: per-parameter accumulated squared gradients; the accumulator
/// never decreases.
struct AdagradState {
  std::vector<double> accumulated_sq_grads;
  double learning_rate = 0.5;
  double epsilon = 1e-10;

  explicit AdagradState(std::size_t n_params, double lr = 0.5, double eps = 1e-10)
      : accumulated_sq_grads(n_params, 0.0), learning_rate(lr), epsilon(eps) {}
};

/// acc += grad^2; param -= lr * grad / (sqrt(acc) + eps).
void adagrad_step(std::span<double> params, std::span<const double> grads, AdagradState& state);

}  // namespace qmlp
