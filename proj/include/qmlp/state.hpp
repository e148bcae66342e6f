#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "qmlp/gate.hpp"

namespace qmlp {

using cxd = std::complex<double>;

inline constexpr int kMaxQubits = 12;

/// Pure state as a complex amplitude vector over 2^n basis states.
/// Convention: qubit 0 is the least significant bit of the basis index.
struct QuantumState {
  int n_qubits = 0;
  std::vector<cxd> amplitudes;

  std::size_t dim() const { return amplitudes.size(); }
};

/// |0...0> on n qubits. 1 <= n_qubits <= kMaxQubits.
QuantumState zero_state(int n_qubits);

/// Applies one gate in place. `angle` must be supplied for param/input
/// sourced rotations; fixed rotations use their stored angle.
///
/// Matrices (theta = resolved angle):
///   H  = (1/sqrt2) [[1,1],[1,-1]]
///   X  = [[0,1],[1,0]]
///   RZ = diag(e^{-i theta/2}, e^{+i theta/2})
///   RY = [[cos(theta/2), -sin(theta/2)], [sin(theta/2), cos(theta/2)]]
///   CNOT flips target when control is |1>
///   CRZ = diag(1, 1, e^{-i theta/2}, e^{+i theta/2}) in control x target order
void apply_gate(QuantumState& state, const Gate& gate,
                std::optional<double> angle = std::nullopt);

/// <Z_qubit> = sum over basis states of (+1 if qubit bit is 0 else -1) |amp|^2.
double pauli_z_expectation(const QuantumState& state, int qubit);

double norm_squared(const QuantumState& state);

/// Per-basis-state probabilities |amp|^2.
std::vector<double> probabilities(const QuantumState& state);

}  // namespace qmlp
