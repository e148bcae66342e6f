#include "qmlp/optimizer.hpp"

#include <cmath>
#include <stdexcept>

namespace qmlp {

void adagrad_step(std::span<double> params, std::span<const double> grads, AdagradState& state) {
  if (params.size() != grads.size() || params.size() != state.accumulated_sq_grads.size()) {
    throw std::invalid_argument("parameter/gradient/state length mismatch");
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grads[i];
    state.accumulated_sq_grads[i] += g * g;
    params[i] -= state.learning_rate * g / (std::sqrt(state.accumulated_sq_grads[i]) +
                                            state.epsilon);
  }
}

}  // namespace qmlp
