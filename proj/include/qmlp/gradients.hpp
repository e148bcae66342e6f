#pragma once

#include <cstddef>

#include "qmlp/circuit.hpp"
#include "qmlp/matrix.hpp"

namespace qmlp {

/// Jacobians of the hidden-layer expectation vector: one row per output
/// qubit, one column per parameter slot / input slot.
struct LayerJacobians {
  RealMatrix d_out_d_params;  // n_qubits x n_params
  RealMatrix d_out_d_inputs;  // n_qubits x n_inputs
};

/// Bookkeeping for the evaluation-count contract of the shift rule.
struct ShiftRuleStats {
  std::size_t circuit_evaluations = 0;
};

/// Exact gradients via the parameter-shift rule, noiseless path only.
///
/// RZ / RY / encoding-input slots use the two-term rule
///   dE/dtheta = (E(theta + pi/2) - E(theta - pi/2)) / 2.
/// CRZ slots go through the exact decomposition
///   CRZ(theta) = RZ(theta/2 on target) . CNOT . RZ(-theta/2 on target) . CNOT,
/// applying the two-term rule to each internal RZ and combining with
/// chain-rule coefficients +-1/2 (4 circuit runs per CRZ slot).
LayerJacobians parameter_shift_gradient(const CircuitSpec& circuit,
                                        std::span<const double> inputs,
                                        std::span<const double> params,
                                        ShiftRuleStats* stats = nullptr);

/// Central differences (E(theta+h) - E(theta-h)) / 2h per slot. The
/// independent oracle for the shift rule; h must be positive.
LayerJacobians finite_difference_gradient(const CircuitSpec& circuit,
                                          std::span<const double> inputs,
                                          std::span<const double> params,
                                          double h = 1e-5);

}  // namespace qmlp
