#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qmlp/circuit.hpp"
#include "qmlp/density.hpp"

// Serial dense-matrix reference simulator. Every operation here goes through
// an explicit 2^n x 2^n unitary (Kronecker embedding) or a Pauli Kraus sum,
// independently of the bit-kernel fast path, so the two can be checked
// against each other. Test oracle and benchmark baseline; not used by the
// main library.
namespace qmlp::ref {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Full 2^n x 2^n unitary for one gate (resolved angle for rotations).
CMatrix gate_unitary(const Gate& gate, std::optional<double> angle, int n_qubits);

/// Runs a circuit on |0...0> by explicit matrix-vector products.
CVector run_statevector(const CircuitSpec& circuit, std::span<const double> inputs,
                        std::span<const double> params);

/// rho -> U rho U^dagger with the explicit unitary.
CMatrix apply_gate_density(const CMatrix& rho, const Gate& gate, std::optional<double> angle,
                           int n_qubits);

/// Depolarizing channel as a Pauli Kraus sum:
/// (1-p) rho + (p/4^k) * sum over the 4^k Pauli words on the acted qubits.
CMatrix apply_depolarizing(const CMatrix& rho, std::span<const int> qubits, double p,
                           int n_qubits);

/// Density-path run with a channel after every gate, all in dense form.
CMatrix run_density(const CircuitSpec& circuit, std::span<const double> inputs,
                    std::span<const double> params, const NoiseConfig& noise);

double pauli_z_expectation(const CVector& state, int qubit, int n_qubits);
double pauli_z_expectation(const CMatrix& rho, int qubit, int n_qubits);

/// Conversions for comparing against the fast path.
CVector from_state(const QuantumState& state);
CMatrix from_density(const DensityMatrix& rho);

double purity(const CMatrix& rho);
Eigen::VectorXd hermitian_eigenvalues(const CMatrix& rho);

}  // namespace qmlp::ref
