#include "qmlp/density.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "qmlp/parallel.hpp"
#include "qmlp/rng.hpp"

namespace qmlp {

namespace {

// Element-count threshold before a kernel is worth a thread team.
constexpr std::size_t kOmpMinElems = 32768;

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;

std::size_t row_threshold(std::size_t dim) {
  return dim == 0 ? 1 : std::max<std::size_t>(1, kOmpMinElems / dim);
}

// Strips one bit position out of an index (bits above shift down).
std::size_t strip_bit(std::size_t i, int qubit) {
  const std::size_t low = i & ((std::size_t{1} << qubit) - 1);
  return ((i >> (qubit + 1)) << qubit) | low;
}

// rho -> U rho: combines row pairs of `qubit` within every column.
void left_mul_1q(DensityMatrix& rho, int qubit, cxd u00, cxd u01, cxd u10, cxd u11) {
  const std::size_t dim = rho.dim();
  const std::size_t mask = std::size_t{1} << qubit;
  const std::size_t lo = mask - 1;
  const std::size_t hi = ~lo;
  cxd* m = rho.elements.data();
  indexed_loop(dim >> 1, row_threshold(dim), [=](std::size_t k) {
    const std::size_t r0 = ((k & hi) << 1) | (k & lo);
    const std::size_t r1 = r0 | mask;
    cxd* row0 = m + r0 * dim;
    cxd* row1 = m + r1 * dim;
    for (std::size_t c = 0; c < dim; ++c) {
      const cxd x0 = row0[c];
      const cxd x1 = row1[c];
      row0[c] = u00 * x0 + u01 * x1;
      row1[c] = u10 * x0 + u11 * x1;
    }
  });
}

// rho -> rho U^dagger: combines column pairs within every row.
void right_mul_1q_dagger(DensityMatrix& rho, int qubit, cxd u00, cxd u01, cxd u10, cxd u11) {
  const std::size_t dim = rho.dim();
  const std::size_t mask = std::size_t{1} << qubit;
  const std::size_t lo = mask - 1;
  const std::size_t hi = ~lo;
  const std::size_t half = dim >> 1;
  cxd* m = rho.elements.data();
  indexed_loop(dim, row_threshold(dim), [=](std::size_t r) {
    cxd* row = m + r * dim;
    for (std::size_t k = 0; k < half; ++k) {
      const std::size_t c0 = ((k & hi) << 1) | (k & lo);
      const std::size_t c1 = c0 | mask;
      const cxd x0 = row[c0];
      const cxd x1 = row[c1];
      // (rho U^dagger)[r,c] = sum_k rho[r,k] * conj(U[c,k])
      row[c0] = x0 * std::conj(u00) + x1 * std::conj(u01);
      row[c1] = x0 * std::conj(u10) + x1 * std::conj(u11);
    }
  });
}

void conjugate_by_1q(DensityMatrix& rho, int qubit, cxd u00, cxd u01, cxd u10, cxd u11) {
  left_mul_1q(rho, qubit, u00, u01, u10, u11);
  right_mul_1q_dagger(rho, qubit, u00, u01, u10, u11);
}

// Diagonal unitary: rho[r,c] *= d(r) * conj(d(c)), where d(i) is d1 on
// indices with the qubit bit set (gated on the control mask), else d0/1.
void conjugate_by_diag(DensityMatrix& rho, int qubit, cxd d0, cxd d1, std::size_t control_mask) {
  const std::size_t dim = rho.dim();
  const std::size_t mask = std::size_t{1} << qubit;
  cxd* m = rho.elements.data();
  auto phase = [=](std::size_t i) -> cxd {
    if ((i & control_mask) != control_mask) return cxd{1.0, 0.0};
    return (i & mask) ? d1 : d0;
  };
  indexed_loop(dim, row_threshold(dim), [=](std::size_t r) {
    const cxd pr = phase(r);
    cxd* row = m + r * dim;
    for (std::size_t c = 0; c < dim; ++c) {
      row[c] *= pr * std::conj(phase(c));
    }
  });
}

void conjugate_by_cnot(DensityMatrix& rho, int control, int target) {
  const std::size_t dim = rho.dim();
  const std::size_t cmask = std::size_t{1} << control;
  const std::size_t tmask = std::size_t{1} << target;
  cxd* m = rho.elements.data();
  // Row permutation, then the same permutation on columns.
  indexed_loop(dim, row_threshold(dim), [=](std::size_t r) {
    if ((r & cmask) && !(r & tmask)) {
      cxd* row_a = m + r * dim;
      cxd* row_b = m + (r | tmask) * dim;
      for (std::size_t c = 0; c < dim; ++c) std::swap(row_a[c], row_b[c]);
    }
  });
  indexed_loop(dim, row_threshold(dim), [=](std::size_t r) {
    cxd* row = m + r * dim;
    for (std::size_t c = 0; c < dim; ++c) {
      if ((c & cmask) && !(c & tmask)) std::swap(row[c], row[c | tmask]);
    }
  });
}

}  // namespace

void NoiseConfig::validate() const {
  if (p1 < 0.0 || p1 > 1.0 || p2 < 0.0 || p2 > 1.0) {
    throw std::invalid_argument("noise probabilities must lie in [0, 1]");
  }
  if (scale < 0.0) throw std::invalid_argument("noise scale must be nonnegative");
  if (scale * p1 > 1.0 || scale * p2 > 1.0) {
    throw std::invalid_argument("scaled noise probability exceeds 1");
  }
  if (shots.has_value() && *shots <= 0) {
    throw std::invalid_argument("shots must be positive");
  }
}

double NoiseConfig::effective_p1() const {
  validate();
  return scale * p1;
}

double NoiseConfig::effective_p2() const {
  validate();
  return scale * p2;
}

DensityMatrix to_density(const QuantumState& state) {
  DensityMatrix rho;
  rho.n_qubits = state.n_qubits;
  const std::size_t dim = state.dim();
  rho.elements.resize(dim * dim);
  cxd* m = rho.elements.data();
  const cxd* a = state.amplitudes.data();
  indexed_loop(dim, row_threshold(dim), [=](std::size_t r) {
    for (std::size_t c = 0; c < dim; ++c) {
      m[r * dim + c] = a[r] * std::conj(a[c]);
    }
  });
  return rho;
}

DensityMatrix zero_density(int n_qubits) { return to_density(zero_state(n_qubits)); }

void apply_gate_density(DensityMatrix& rho, const Gate& gate, std::optional<double> angle) {
  validate_gate(gate, rho.n_qubits);
  if (gate.needs_resolved_angle() && !angle.has_value()) {
    throw std::invalid_argument("angle missing for parametric gate");
  }
  const double theta = gate.source == AngleSource::fixed ? gate.fixed_angle : angle.value_or(0.0);

  switch (gate.kind) {
    case GateKind::H:
      conjugate_by_1q(rho, gate.target, kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2);
      break;
    case GateKind::X:
      conjugate_by_1q(rho, gate.target, 0.0, 1.0, 1.0, 0.0);
      break;
    case GateKind::RZ:
      conjugate_by_diag(rho, gate.target, std::polar(1.0, -theta / 2), std::polar(1.0, theta / 2),
                        0);
      break;
    case GateKind::RY: {
      const double c = std::cos(theta / 2);
      const double s = std::sin(theta / 2);
      conjugate_by_1q(rho, gate.target, c, -s, s, c);
      break;
    }
    case GateKind::CRZ:
      conjugate_by_diag(rho, gate.target, std::polar(1.0, -theta / 2), std::polar(1.0, theta / 2),
                        std::size_t{1} << gate.control);
      break;
    case GateKind::CNOT:
      conjugate_by_cnot(rho, gate.control, gate.target);
      break;
  }
}

void apply_depolarizing(DensityMatrix& rho, std::span<const int> qubits, double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("depolarizing probability outside [0, 1]");
  if (qubits.size() != 1 && qubits.size() != 2) {
    throw std::invalid_argument("depolarizing channel acts on 1 or 2 qubits");
  }
  for (int q : qubits) {
    if (q < 0 || q >= rho.n_qubits) throw std::out_of_range("channel qubit out of range");
  }
  if (qubits.size() == 2 && qubits[0] == qubits[1]) {
    throw std::invalid_argument("channel qubits must be distinct");
  }
  if (p == 0.0) return;

  const std::size_t dim = rho.dim();
  const int k = static_cast<int>(qubits.size());
  const int q_lo = k == 2 ? std::min(qubits[0], qubits[1]) : qubits[0];
  const int q_hi = k == 2 ? std::max(qubits[0], qubits[1]) : -1;

  auto strip = [=](std::size_t i) {
    // Remove the acted-on bits, high one first so the low position is stable.
    if (k == 2) i = strip_bit(i, q_hi);
    return strip_bit(i, q_lo);
  };
  std::size_t acted_mask = std::size_t{1} << qubits[0];
  if (k == 2) acted_mask |= std::size_t{1} << qubits[1];

  // Partial trace over the acted-on qubits.
  const std::size_t sub_dim = dim >> k;
  std::vector<cxd> sigma(sub_dim * sub_dim, cxd{0.0, 0.0});
  for (std::size_t r = 0; r < dim; ++r) {
    const std::size_t sr = strip(r);
    for (std::size_t c = 0; c < dim; ++c) {
      if ((r & acted_mask) == (c & acted_mask)) {
        sigma[sr * sub_dim + strip(c)] += rho.elements[r * dim + c];
      }
    }
  }

  const double mix = p / static_cast<double>(std::size_t{1} << k);
  cxd* m = rho.elements.data();
  const cxd* s = sigma.data();
  indexed_loop(dim, row_threshold(dim), [=](std::size_t r) {
    const std::size_t sr = strip(r);
    cxd* row = m + r * dim;
    for (std::size_t c = 0; c < dim; ++c) {
      cxd value = (1.0 - p) * row[c];
      if ((r & acted_mask) == (c & acted_mask)) {
        value += mix * s[sr * sub_dim + strip(c)];
      }
      row[c] = value;
    }
  });
}

void apply_depolarizing(DensityMatrix& rho, int qubit, double p) {
  const std::array<int, 1> qs{qubit};
  apply_depolarizing(rho, std::span<const int>(qs), p);
}

void apply_depolarizing(DensityMatrix& rho, int qubit_a, int qubit_b, double p) {
  const std::array<int, 2> qs{qubit_a, qubit_b};
  apply_depolarizing(rho, std::span<const int>(qs), p);
}

double pauli_z_expectation(const DensityMatrix& rho, int qubit) {
  if (qubit < 0 || qubit >= rho.n_qubits) throw std::out_of_range("qubit index out of range");
  const std::size_t mask = std::size_t{1} << qubit;
  const std::size_t dim = rho.dim();
  double value = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const double d = rho.elements[i * dim + i].real();
    value += (i & mask) ? -d : d;
  }
  return value;
}

double sampled_expectation(double exact_z, int shots, std::uint64_t seed) {
  if (shots <= 0) throw std::invalid_argument("shots must be positive");
  double p_plus = (1.0 + exact_z) / 2.0;
  if (p_plus < 0.0) p_plus = 0.0;
  if (p_plus > 1.0) p_plus = 1.0;
  SplitMix64 rng(seed);
  long n_plus = 0;
  for (int s = 0; s < shots; ++s) {
    if (rng.next_double() < p_plus) ++n_plus;
  }
  return static_cast<double>(2 * n_plus - shots) / static_cast<double>(shots);
}

double pauli_z_expectation_density(const DensityMatrix& rho, int qubit, std::optional<int> shots,
                                   std::optional<std::uint64_t> seed) {
  const double exact = pauli_z_expectation(rho, qubit);
  if (!shots.has_value()) return exact;
  if (!seed.has_value()) {
    throw std::invalid_argument("shot sampling requires an rng seed");
  }
  return sampled_expectation(exact, *shots, *seed);
}

cxd trace(const DensityMatrix& rho) {
  const std::size_t dim = rho.dim();
  cxd t{0.0, 0.0};
  for (std::size_t i = 0; i < dim; ++i) t += rho.elements[i * dim + i];
  return t;
}

}  // namespace qmlp
