#include "qmlp/reference.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qmlp::ref {

namespace {

using cxd = std::complex<double>;

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix single_qubit_matrix(GateKind kind, double theta) {
  CMatrix u(2, 2);
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  switch (kind) {
    case GateKind::H:
      u << inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2;
      return u;
    case GateKind::X:
      u << 0, 1, 1, 0;
      return u;
    case GateKind::RZ:
      u << std::polar(1.0, -theta / 2), 0, 0, std::polar(1.0, theta / 2);
      return u;
    case GateKind::RY:
      u << std::cos(theta / 2), -std::sin(theta / 2), std::sin(theta / 2), std::cos(theta / 2);
      return u;
    default:
      throw std::invalid_argument("not a single-qubit gate");
  }
}

// 4x4 matrix in control (high bit) x target (low bit) ordering.
CMatrix two_qubit_matrix(GateKind kind, double theta) {
  CMatrix u = CMatrix::Zero(4, 4);
  switch (kind) {
    case GateKind::CNOT:
      u(0, 0) = 1;
      u(1, 1) = 1;
      u(2, 3) = 1;
      u(3, 2) = 1;
      return u;
    case GateKind::CRZ:
      u(0, 0) = 1;
      u(1, 1) = 1;
      u(2, 2) = std::polar(1.0, -theta / 2);
      u(3, 3) = std::polar(1.0, theta / 2);
      return u;
    default:
      throw std::invalid_argument("not a two-qubit gate");
  }
}

int bit(std::size_t value, int position) {
  return static_cast<int>((value >> position) & 1u);
}

}  // namespace

CMatrix gate_unitary(const Gate& gate, std::optional<double> angle, int n_qubits) {
  validate_gate(gate, n_qubits);
  if (gate.needs_resolved_angle() && !angle.has_value()) {
    throw std::invalid_argument("angle missing for parametric gate");
  }
  const double theta = gate.source == AngleSource::fixed ? gate.fixed_angle : angle.value_or(0.0);
  const std::size_t dim = std::size_t{1} << n_qubits;

  if (!gate.is_two_qubit()) {
    // I (high bits) x u x I (low bits); qubit 0 is the least significant bit.
    const CMatrix u = single_qubit_matrix(gate.kind, theta);
    const CMatrix low = CMatrix::Identity(Eigen::Index{1} << gate.target,
                                          Eigen::Index{1} << gate.target);
    const Eigen::Index high_dim = Eigen::Index{1} << (n_qubits - gate.target - 1);
    return kron(CMatrix::Identity(high_dim, high_dim), kron(u, low));
  }

  // A two-qubit gate is a Kronecker product up to the permutation that moves
  // the control/target bits together; build it entrywise instead.
  const CMatrix u = two_qubit_matrix(gate.kind, theta);
  const std::size_t pair_mask =
      (std::size_t{1} << gate.control) | (std::size_t{1} << gate.target);
  CMatrix full = CMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      if ((r & ~pair_mask) != (c & ~pair_mask)) continue;
      const int ur = 2 * bit(r, gate.control) + bit(r, gate.target);
      const int uc = 2 * bit(c, gate.control) + bit(c, gate.target);
      full(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = u(ur, uc);
    }
  }
  return full;
}

CVector run_statevector(const CircuitSpec& circuit, std::span<const double> inputs,
                        std::span<const double> params) {
  const Eigen::Index dim = Eigen::Index{1} << circuit.n_qubits;
  CVector state = CVector::Zero(dim);
  state(0) = 1.0;
  for (const Gate& gate : circuit.gates) {
    std::optional<double> angle;
    if (gate.is_rotation()) angle = resolve_gate_angle(gate, inputs, params);
    state = gate_unitary(gate, angle, circuit.n_qubits) * state;
  }
  return state;
}

CMatrix apply_gate_density(const CMatrix& rho, const Gate& gate, std::optional<double> angle,
                           int n_qubits) {
  const CMatrix u = gate_unitary(gate, angle, n_qubits);
  return u * rho * u.adjoint();
}

CMatrix apply_depolarizing(const CMatrix& rho, std::span<const int> qubits, double p,
                           int n_qubits) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("depolarizing probability outside [0, 1]");
  if (qubits.size() != 1 && qubits.size() != 2) {
    throw std::invalid_argument("depolarizing channel acts on 1 or 2 qubits");
  }

  // Pauli-twirl form: the uniform Pauli sum over the acted qubits equals
  // replacement by the maximally mixed state.
  CMatrix pauli[4];
  for (int i = 0; i < 4; ++i) pauli[i] = CMatrix(2, 2);
  pauli[0] << 1, 0, 0, 1;
  pauli[1] << 0, 1, 1, 0;
  pauli[2] << 0, cxd(0, -1), cxd(0, 1), 0;
  pauli[3] << 1, 0, 0, -1;

  auto embed_1q = [&](const CMatrix& u, int q) {
    const Eigen::Index low = Eigen::Index{1} << q;
    const Eigen::Index high = Eigen::Index{1} << (n_qubits - q - 1);
    return kron(CMatrix::Identity(high, high), kron(u, CMatrix::Identity(low, low)));
  };

  CMatrix mixed = CMatrix::Zero(rho.rows(), rho.cols());
  if (qubits.size() == 1) {
    for (int i = 0; i < 4; ++i) {
      const CMatrix w = embed_1q(pauli[i], qubits[0]);
      mixed += w * rho * w.adjoint();
    }
    mixed /= 4.0;
  } else {
    if (qubits[0] == qubits[1]) throw std::invalid_argument("channel qubits must be distinct");
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        const CMatrix w = embed_1q(pauli[i], qubits[0]) * embed_1q(pauli[j], qubits[1]);
        mixed += w * rho * w.adjoint();
      }
    }
    mixed /= 16.0;
  }
  return (1.0 - p) * rho + p * mixed;
}

CMatrix run_density(const CircuitSpec& circuit, std::span<const double> inputs,
                    std::span<const double> params, const NoiseConfig& noise) {
  const double p1 = noise.effective_p1();
  const double p2 = noise.effective_p2();
  const Eigen::Index dim = Eigen::Index{1} << circuit.n_qubits;
  CMatrix rho = CMatrix::Zero(dim, dim);
  rho(0, 0) = 1.0;
  for (const Gate& gate : circuit.gates) {
    std::optional<double> angle;
    if (gate.is_rotation()) angle = resolve_gate_angle(gate, inputs, params);
    rho = apply_gate_density(rho, gate, angle, circuit.n_qubits);
    if (gate.is_two_qubit()) {
      const int qs[2] = {gate.control, gate.target};
      rho = apply_depolarizing(rho, qs, p2, circuit.n_qubits);
    } else {
      const int qs[1] = {gate.target};
      rho = apply_depolarizing(rho, qs, p1, circuit.n_qubits);
    }
  }
  return rho;
}

double pauli_z_expectation(const CVector& state, int qubit, int n_qubits) {
  if (qubit < 0 || qubit >= n_qubits) throw std::out_of_range("qubit index out of range");
  double value = 0.0;
  for (Eigen::Index i = 0; i < state.size(); ++i) {
    const double prob = std::norm(state(i));
    value += bit(static_cast<std::size_t>(i), qubit) ? -prob : prob;
  }
  return value;
}

double pauli_z_expectation(const CMatrix& rho, int qubit, int n_qubits) {
  if (qubit < 0 || qubit >= n_qubits) throw std::out_of_range("qubit index out of range");
  double value = 0.0;
  for (Eigen::Index i = 0; i < rho.rows(); ++i) {
    const double d = rho(i, i).real();
    value += bit(static_cast<std::size_t>(i), qubit) ? -d : d;
  }
  return value;
}

CVector from_state(const QuantumState& state) {
  CVector v(static_cast<Eigen::Index>(state.dim()));
  for (std::size_t i = 0; i < state.dim(); ++i) {
    v(static_cast<Eigen::Index>(i)) = state.amplitudes[i];
  }
  return v;
}

CMatrix from_density(const DensityMatrix& rho) {
  const Eigen::Index dim = static_cast<Eigen::Index>(rho.dim());
  CMatrix m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      m(r, c) = rho.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
    }
  }
  return m;
}

double purity(const CMatrix& rho) { return (rho * rho).trace().real(); }

Eigen::VectorXd hermitian_eigenvalues(const CMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho);
  return solver.eigenvalues();
}

}  // namespace qmlp::ref
