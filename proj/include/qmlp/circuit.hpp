#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qmlp/density.hpp"
#include "qmlp/state.hpp"

namespace qmlp {

/// Shape of one quantum hidden layer: n input features = n qubits, and L
/// parametric layers of ring CRZ entanglement followed by per-qubit RY.
struct HiddenLayerSpec {
  int n_qubits = 0;
  int n_parametric_layers = 0;

  int param_count() const { return 2 * n_qubits * n_parametric_layers; }
};

/// Ordered gate list with distinct parameter and input slots. Input slots
/// appear only in encoding RZ gates.
struct CircuitSpec {
  int n_qubits = 0;
  std::vector<Gate> gates;
  int n_params = 0;
  int n_inputs = 0;
};

/// Angle encoding: for each qubit q, H(q) then RZ(input slot q).
std::vector<Gate> build_encoding(int n_qubits);

/// One parametric layer: CRZ(q -> (q+1) mod n) for q = 0..n-1, then RY on
/// every qubit. Consumes 2n parameter slots starting at param_offset, CRZ
/// slots first. Requires n_qubits >= 2.
std::vector<Gate> build_parametric_layer(int n_qubits, int param_offset);

/// Encoding followed by L parametric layers; 2nL parameter slots, n inputs.
CircuitSpec build_hidden_layer(const HiddenLayerSpec& spec);

/// Checks slot coverage and per-gate validity. Throws std::invalid_argument.
void validate_circuit(const CircuitSpec& circuit);

/// Runs the circuit on |0...0> with the given input/parameter angles and
/// returns the statevector. Noiseless path.
QuantumState run_statevector(const CircuitSpec& circuit, std::span<const double> inputs,
                             std::span<const double> params);

/// Density-matrix run with a depolarizing channel after every gate
/// (single-qubit gates get the p1 channel, two-qubit gates the p2 channel;
/// encoding gates are physical gates and are noisy too).
DensityMatrix run_density(const CircuitSpec& circuit, std::span<const double> inputs,
                          std::span<const double> params, const NoiseConfig& noise);

/// Pauli-Z expectation of every qubit. Without `noise` this is the analytic
/// statevector path; with `noise` the density path, exact or shot-sampled
/// per the NoiseConfig (seed required when shots are set).
std::vector<double> eval_hidden_layer(const CircuitSpec& circuit,
                                      std::span<const double> inputs,
                                      std::span<const double> params,
                                      const std::optional<NoiseConfig>& noise = std::nullopt,
                                      std::optional<std::uint64_t> seed = std::nullopt);

/// JSON round trip of the gate list, used for debugging dumps and the model
/// file format.
std::string circuit_to_json(const CircuitSpec& circuit);
CircuitSpec circuit_from_json(const std::string& text);

}  // namespace qmlp
