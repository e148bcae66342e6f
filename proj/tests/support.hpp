#pragma once

// Shared helpers for randomized tests. The circuits produced here are plain
// data; both the fast path and the dense reference consume them.

#include <cmath>
#include <numbers>
#include <vector>

#include "qmlp/circuit.hpp"
#include "qmlp/rng.hpp"
#include "qmlp/state.hpp"

namespace testsupport {

using qmlp::CircuitSpec;
using qmlp::Gate;
using qmlp::QuantumState;
using qmlp::SplitMix64;

// Arbitrary fixed-angle gate soup (no parameter/input slots).
inline CircuitSpec random_gate_soup(int n_qubits, int n_gates, std::uint64_t seed) {
  SplitMix64 rng(seed);
  CircuitSpec circuit;
  circuit.n_qubits = n_qubits;
  for (int i = 0; i < n_gates; ++i) {
    const int q = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n_qubits)));
    const double angle = rng.next_in(-std::numbers::pi, std::numbers::pi);
    const auto kind = rng.next_below(n_qubits >= 2 ? 6 : 4);
    switch (kind) {
      case 0: circuit.gates.push_back(Gate::h(q)); break;
      case 1: circuit.gates.push_back(Gate::x(q)); break;
      case 2: circuit.gates.push_back(Gate::rz_fixed(q, angle)); break;
      case 3: circuit.gates.push_back(Gate::ry_fixed(q, angle)); break;
      default: {
        int t = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n_qubits - 1)));
        if (t >= q) ++t;
        if (kind == 4) {
          circuit.gates.push_back(Gate::crz_fixed(q, t, angle));
        } else {
          circuit.gates.push_back(Gate::cnot(q, t));
        }
        break;
      }
    }
  }
  return circuit;
}

struct RandomLayerCase {
  CircuitSpec circuit;
  std::vector<double> inputs;
  std::vector<double> params;
};

inline RandomLayerCase random_layer_case(int n_qubits, int layers, std::uint64_t seed) {
  RandomLayerCase c;
  c.circuit = qmlp::build_hidden_layer({n_qubits, layers});
  SplitMix64 rng(seed);
  c.inputs.resize(static_cast<std::size_t>(c.circuit.n_inputs));
  c.params.resize(static_cast<std::size_t>(c.circuit.n_params));
  for (double& v : c.inputs) v = rng.next_in(-std::numbers::pi, std::numbers::pi);
  for (double& v : c.params) v = rng.next_in(-std::numbers::pi, std::numbers::pi);
  return c;
}

// Haar-ish random normalized state (good enough for invariance checks).
inline QuantumState random_state(int n_qubits, std::uint64_t seed) {
  QuantumState state = qmlp::zero_state(n_qubits);
  SplitMix64 rng(seed);
  double norm_sq = 0.0;
  for (auto& amp : state.amplitudes) {
    amp = {rng.next_in(-1.0, 1.0), rng.next_in(-1.0, 1.0)};
    norm_sq += std::norm(amp);
  }
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (auto& amp : state.amplitudes) amp *= inv;
  return state;
}

}  // namespace testsupport
