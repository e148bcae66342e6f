#pragma once

#include <span>
#include <string>

namespace qmlp {

enum class GateKind { H, X, RZ, RY, CRZ, CNOT };

/// Where a rotation gate takes its angle from.
enum class AngleSource { none, fixed, param, input };

/// One gate in a circuit. Single-qubit gates use `target` only; two-qubit
/// gates use (`control`, `target`). Rotation gates (RZ, RY, CRZ) carry
/// exactly one angle source: a fixed value, a parameter slot, or an input
/// slot.
struct Gate {
  GateKind kind = GateKind::H;
  int control = -1;
  int target = 0;
  AngleSource source = AngleSource::none;
  int slot = -1;
  double fixed_angle = 0.0;

  static Gate h(int q) { return {GateKind::H, -1, q, AngleSource::none, -1, 0.0}; }
  static Gate x(int q) { return {GateKind::X, -1, q, AngleSource::none, -1, 0.0}; }
  static Gate rz_fixed(int q, double a) { return {GateKind::RZ, -1, q, AngleSource::fixed, -1, a}; }
  static Gate rz_param(int q, int s) { return {GateKind::RZ, -1, q, AngleSource::param, s, 0.0}; }
  static Gate rz_input(int q, int s) { return {GateKind::RZ, -1, q, AngleSource::input, s, 0.0}; }
  static Gate ry_fixed(int q, double a) { return {GateKind::RY, -1, q, AngleSource::fixed, -1, a}; }
  static Gate ry_param(int q, int s) { return {GateKind::RY, -1, q, AngleSource::param, s, 0.0}; }
  static Gate crz_fixed(int c, int t, double a) { return {GateKind::CRZ, c, t, AngleSource::fixed, -1, a}; }
  static Gate crz_param(int c, int t, int s) { return {GateKind::CRZ, c, t, AngleSource::param, s, 0.0}; }
  static Gate cnot(int c, int t) { return {GateKind::CNOT, c, t, AngleSource::none, -1, 0.0}; }

  bool is_two_qubit() const { return kind == GateKind::CRZ || kind == GateKind::CNOT; }
  bool is_rotation() const {
    return kind == GateKind::RZ || kind == GateKind::RY || kind == GateKind::CRZ;
  }
  bool needs_resolved_angle() const {
    return source == AngleSource::param || source == AngleSource::input;
  }
};

const char* gate_kind_name(GateKind kind);
GateKind gate_kind_from_name(const std::string& name);

/// Checks structural invariants: target/control ranges, angle sources
/// matching the gate kind, control != target. Throws std::invalid_argument.
void validate_gate(const Gate& gate, int n_qubits);

/// Resolves the angle of a rotation gate against input/parameter vectors.
/// Non-rotation gates return 0.
double resolve_gate_angle(const Gate& gate, std::span<const double> inputs,
                          std::span<const double> params);

}  // namespace qmlp
