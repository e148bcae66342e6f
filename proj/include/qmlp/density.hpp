#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "qmlp/state.hpp"

namespace qmlp {

/// Mixed state as a 2^n x 2^n complex matrix, row major.
/// Same qubit ordering convention as QuantumState.
struct DensityMatrix {
  int n_qubits = 0;
  std::vector<cxd> elements;

  std::size_t dim() const { return std::size_t{1} << n_qubits; }
  cxd& at(std::size_t r, std::size_t c) { return elements[r * dim() + c]; }
  const cxd& at(std::size_t r, std::size_t c) const { return elements[r * dim() + c]; }
};

/// Depolarizing-noise settings. `scale` multiplies the nominal per-gate
/// probabilities; the effective probabilities must stay within [0, 1]
/// (exceeding 1 is an error, never a silent clamp). When `shots` is absent,
/// expectations are analytic.
struct NoiseConfig {
  double p1 = 0.001;
  double p2 = 0.01;
  double scale = 1.0;
  std::optional<int> shots;

  void validate() const;
  double effective_p1() const;
  double effective_p2() const;
};

/// rho = |psi><psi|.
DensityMatrix to_density(const QuantumState& state);

/// |0...0><0...0| on n qubits.
DensityMatrix zero_density(int n_qubits);

/// rho -> U rho U^dagger for one gate, in place.
void apply_gate_density(DensityMatrix& rho, const Gate& gate,
                        std::optional<double> angle = std::nullopt);

/// k-qubit depolarizing channel on the listed qubits (k = 1 or 2):
/// rho -> (1-p) rho + p * (I/2^k on those qubits) tensor Tr_qubits(rho).
void apply_depolarizing(DensityMatrix& rho, std::span<const int> qubits, double p);
void apply_depolarizing(DensityMatrix& rho, int qubit, double p);
void apply_depolarizing(DensityMatrix& rho, int qubit_a, int qubit_b, double p);

/// Exact Tr(rho Z_qubit).
double pauli_z_expectation(const DensityMatrix& rho, int qubit);

/// Estimates an expectation from `shots` simulated +/-1 outcomes with
/// P(+1) = (1 + exact_z) / 2. Deterministic for a given seed.
double sampled_expectation(double exact_z, int shots, std::uint64_t seed);

/// Analytic expectation when shots is absent, sampled otherwise (seed
/// required in that case).
double pauli_z_expectation_density(const DensityMatrix& rho, int qubit,
                                   std::optional<int> shots = std::nullopt,
                                   std::optional<std::uint64_t> seed = std::nullopt);

cxd trace(const DensityMatrix& rho);

}  // namespace qmlp
