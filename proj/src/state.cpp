#include "qmlp/state.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "qmlp/parallel.hpp"

namespace qmlp {

namespace {

// Pair loops below this size are not worth a thread team (measured
// crossover on small hosts; larger registers scale with the same code).
constexpr std::size_t kOmpMinPairs = 4096;

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;

// Applies a dense 2x2 matrix {u00,u01,u10,u11} to the amplitude pairs of one
// qubit. Each pair is touched by exactly one iteration, so the parallel form
// is bit-identical to the serial one.
void apply_1q_matrix(std::vector<cxd>& amps, int qubit, cxd u00, cxd u01, cxd u10, cxd u11) {
  const std::size_t mask = std::size_t{1} << qubit;
  const std::size_t lo = mask - 1;
  const std::size_t hi = ~lo;
  cxd* a = amps.data();
  indexed_loop(amps.size() >> 1, kOmpMinPairs, [=](std::size_t k) {
    const std::size_t i0 = ((k & hi) << 1) | (k & lo);
    const std::size_t i1 = i0 | mask;
    const cxd a0 = a[i0];
    const cxd a1 = a[i1];
    a[i0] = u00 * a0 + u01 * a1;
    a[i1] = u10 * a0 + u11 * a1;
  });
}

// Diagonal phase per basis state: d1 where the qubit bit is set, d0 where it
// is clear. Optionally gated on a control bit being set.
void apply_diag_phase(std::vector<cxd>& amps, int qubit, cxd d0, cxd d1,
                      std::size_t control_mask) {
  const std::size_t mask = std::size_t{1} << qubit;
  cxd* a = amps.data();
  indexed_loop(amps.size(), 2 * kOmpMinPairs, [=](std::size_t i) {
    if ((i & control_mask) == control_mask) {
      a[i] *= (i & mask) ? d1 : d0;
    }
  });
}

void apply_cnot(std::vector<cxd>& amps, int control, int target) {
  const std::size_t cmask = std::size_t{1} << control;
  const std::size_t tmask = std::size_t{1} << target;
  cxd* a = amps.data();
  indexed_loop(amps.size(), 2 * kOmpMinPairs, [=](std::size_t i) {
    if ((i & cmask) && !(i & tmask)) {
      std::swap(a[i], a[i | tmask]);
    }
  });
}

}  // namespace

QuantumState zero_state(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("n_qubits must be in [1, " + std::to_string(kMaxQubits) + "]");
  }
  QuantumState state;
  state.n_qubits = n_qubits;
  state.amplitudes.assign(std::size_t{1} << n_qubits, cxd{0.0, 0.0});
  state.amplitudes[0] = cxd{1.0, 0.0};
  return state;
}

void apply_gate(QuantumState& state, const Gate& gate, std::optional<double> angle) {
  validate_gate(gate, state.n_qubits);
  if (gate.needs_resolved_angle() && !angle.has_value()) {
    throw std::invalid_argument("angle missing for parametric gate");
  }
  const double theta = gate.source == AngleSource::fixed ? gate.fixed_angle : angle.value_or(0.0);

  switch (gate.kind) {
    case GateKind::H:
      apply_1q_matrix(state.amplitudes, gate.target, kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2);
      break;
    case GateKind::X:
      apply_1q_matrix(state.amplitudes, gate.target, 0.0, 1.0, 1.0, 0.0);
      break;
    case GateKind::RZ:
      apply_diag_phase(state.amplitudes, gate.target, std::polar(1.0, -theta / 2),
                       std::polar(1.0, theta / 2), 0);
      break;
    case GateKind::RY: {
      const double c = std::cos(theta / 2);
      const double s = std::sin(theta / 2);
      apply_1q_matrix(state.amplitudes, gate.target, c, -s, s, c);
      break;
    }
    case GateKind::CRZ:
      apply_diag_phase(state.amplitudes, gate.target, std::polar(1.0, -theta / 2),
                       std::polar(1.0, theta / 2), std::size_t{1} << gate.control);
      break;
    case GateKind::CNOT:
      apply_cnot(state.amplitudes, gate.control, gate.target);
      break;
  }
}

double pauli_z_expectation(const QuantumState& state, int qubit) {
  if (qubit < 0 || qubit >= state.n_qubits) {
    throw std::out_of_range("qubit index out of range");
  }
  const std::size_t mask = std::size_t{1} << qubit;
  double value = 0.0;
  for (std::size_t i = 0; i < state.dim(); ++i) {
    const double p = std::norm(state.amplitudes[i]);
    value += (i & mask) ? -p : p;
  }
  return value;
}

double norm_squared(const QuantumState& state) {
  double total = 0.0;
  for (const cxd& a : state.amplitudes) total += std::norm(a);
  return total;
}

std::vector<double> probabilities(const QuantumState& state) {
  std::vector<double> probs(state.dim());
  for (std::size_t i = 0; i < state.dim(); ++i) probs[i] = std::norm(state.amplitudes[i]);
  return probs;
}

}  // namespace qmlp
