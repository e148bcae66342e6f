#pragma once

#include <cstddef>
#include <vector>

namespace qmlp {

/// Minimal dense real matrix, row major. Big enough for Jacobians and the
/// classical dense layer; heavier linear algebra lives in the reference
/// oracle only.
struct RealMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  RealMatrix() = default;
  RealMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const double& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

}  // namespace qmlp
