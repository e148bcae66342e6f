#include "qmlp/gradients.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qmlp/parallel.hpp"

namespace qmlp {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

std::vector<double> all_expectations(const QuantumState& state) {
  std::vector<double> e(static_cast<std::size_t>(state.n_qubits));
  for (int q = 0; q < state.n_qubits; ++q) {
    e[static_cast<std::size_t>(q)] = pauli_z_expectation(state, q);
  }
  return e;
}

std::vector<double> eval_plain(const CircuitSpec& circuit, std::span<const double> inputs,
                               std::span<const double> params) {
  return all_expectations(run_statevector(circuit, inputs, params));
}

// Runs the circuit with the CRZ at `crz_gate` replaced by its exact
// decomposition CNOT . RZ(-theta/2 + beta_shift) . CNOT . RZ(theta/2 +
// alpha_shift) on the target (application order), so the internal RZ angles
// can be shifted independently.
std::vector<double> eval_crz_decomposed(const CircuitSpec& circuit, std::span<const double> inputs,
                                        std::span<const double> params, std::size_t crz_gate,
                                        double alpha_shift, double beta_shift) {
  QuantumState state = zero_state(circuit.n_qubits);
  for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
    const Gate& gate = circuit.gates[i];
    if (i == crz_gate) {
      const double theta = resolve_gate_angle(gate, inputs, params);
      apply_gate(state, Gate::cnot(gate.control, gate.target));
      apply_gate(state, Gate::rz_fixed(gate.target, -theta / 2 + beta_shift));
      apply_gate(state, Gate::cnot(gate.control, gate.target));
      apply_gate(state, Gate::rz_fixed(gate.target, theta / 2 + alpha_shift));
    } else if (gate.is_rotation()) {
      apply_gate(state, gate, resolve_gate_angle(gate, inputs, params));
    } else {
      apply_gate(state, gate);
    }
  }
  return all_expectations(state);
}

// Gate index owning each parameter slot.
std::vector<std::size_t> param_slot_gates(const CircuitSpec& circuit) {
  std::vector<std::size_t> owner(static_cast<std::size_t>(circuit.n_params));
  for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
    if (circuit.gates[i].source == AngleSource::param) {
      owner[static_cast<std::size_t>(circuit.gates[i].slot)] = i;
    }
  }
  return owner;
}

}  // namespace

LayerJacobians parameter_shift_gradient(const CircuitSpec& circuit, std::span<const double> inputs,
                                        std::span<const double> params, ShiftRuleStats* stats) {
  if (inputs.size() != static_cast<std::size_t>(circuit.n_inputs) ||
      params.size() != static_cast<std::size_t>(circuit.n_params)) {
    throw std::invalid_argument("input/parameter vector length mismatch");
  }
  const std::size_t n = static_cast<std::size_t>(circuit.n_qubits);
  LayerJacobians jac;
  jac.d_out_d_params = RealMatrix(n, params.size());
  jac.d_out_d_inputs = RealMatrix(n, inputs.size());

  const auto owner = param_slot_gates(circuit);
  const std::size_t n_cols = params.size() + inputs.size();
  std::vector<std::size_t> evals_per_col(n_cols, 0);

  // Columns are independent; each task writes its own slice of the
  // Jacobians, so the schedule cannot change the result.
  indexed_loop_dynamic(n_cols, 16, [&](std::size_t col) {
    std::vector<double> grad_col(n);
    std::size_t evals = 0;
    if (col < params.size()) {
      const std::size_t slot = static_cast<std::size_t>(col);
      const Gate& gate = circuit.gates[owner[slot]];
      if (gate.kind == GateKind::CRZ) {
        const auto ap = eval_crz_decomposed(circuit, inputs, params, owner[slot], kHalfPi, 0.0);
        const auto am = eval_crz_decomposed(circuit, inputs, params, owner[slot], -kHalfPi, 0.0);
        const auto bp = eval_crz_decomposed(circuit, inputs, params, owner[slot], 0.0, kHalfPi);
        const auto bm = eval_crz_decomposed(circuit, inputs, params, owner[slot], 0.0, -kHalfPi);
        evals = 4;
        for (std::size_t q = 0; q < n; ++q) {
          // d theta of the two internal RZ angles is +1/2 and -1/2.
          grad_col[q] = 0.25 * (ap[q] - am[q]) - 0.25 * (bp[q] - bm[q]);
        }
      } else {
        std::vector<double> shifted(params.begin(), params.end());
        shifted[slot] = params[slot] + kHalfPi;
        const auto ep = eval_plain(circuit, inputs, shifted);
        shifted[slot] = params[slot] - kHalfPi;
        const auto em = eval_plain(circuit, inputs, shifted);
        evals = 2;
        for (std::size_t q = 0; q < n; ++q) grad_col[q] = 0.5 * (ep[q] - em[q]);
      }
      for (std::size_t q = 0; q < n; ++q) jac.d_out_d_params.at(q, slot) = grad_col[q];
    } else {
      const std::size_t slot = col - params.size();
      std::vector<double> shifted(inputs.begin(), inputs.end());
      shifted[slot] = inputs[slot] + kHalfPi;
      const auto ep = eval_plain(circuit, shifted, params);
      shifted[slot] = inputs[slot] - kHalfPi;
      const auto em = eval_plain(circuit, shifted, params);
      evals = 2;
      for (std::size_t q = 0; q < n; ++q) {
        grad_col[q] = 0.5 * (ep[q] - em[q]);
        jac.d_out_d_inputs.at(q, slot) = grad_col[q];
      }
    }
    evals_per_col[col] = evals;
  });

  if (stats != nullptr) {
    stats->circuit_evaluations = 0;
    for (std::size_t e : evals_per_col) stats->circuit_evaluations += e;
  }
  return jac;
}

LayerJacobians finite_difference_gradient(const CircuitSpec& circuit,
                                          std::span<const double> inputs,
                                          std::span<const double> params, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  if (inputs.size() != static_cast<std::size_t>(circuit.n_inputs) ||
      params.size() != static_cast<std::size_t>(circuit.n_params)) {
    throw std::invalid_argument("input/parameter vector length mismatch");
  }
  const std::size_t n = static_cast<std::size_t>(circuit.n_qubits);
  LayerJacobians jac;
  jac.d_out_d_params = RealMatrix(n, params.size());
  jac.d_out_d_inputs = RealMatrix(n, inputs.size());

  for (std::size_t slot = 0; slot < params.size(); ++slot) {
    std::vector<double> shifted(params.begin(), params.end());
    shifted[slot] = params[slot] + h;
    const auto ep = eval_plain(circuit, inputs, shifted);
    shifted[slot] = params[slot] - h;
    const auto em = eval_plain(circuit, inputs, shifted);
    for (std::size_t q = 0; q < n; ++q) {
      jac.d_out_d_params.at(q, slot) = (ep[q] - em[q]) / (2.0 * h);
    }
  }
  for (std::size_t slot = 0; slot < inputs.size(); ++slot) {
    std::vector<double> shifted(inputs.begin(), inputs.end());
    shifted[slot] = inputs[slot] + h;
    const auto ep = eval_plain(circuit, shifted, params);
    shifted[slot] = inputs[slot] - h;
    const auto em = eval_plain(circuit, shifted, params);
    for (std::size_t q = 0; q < n; ++q) {
      jac.d_out_d_inputs.at(q, slot) = (ep[q] - em[q]) / (2.0 * h);
    }
  }
  return jac;
}

}  // namespace qmlp
