#include "qmlp/gate.hpp"

#include <stdexcept>

namespace qmlp {

const char* gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::RZ: return "RZ";
    case GateKind::RY: return "RY";
    case GateKind::CRZ: return "CRZ";
    case GateKind::CNOT: return "CNOT";
  }
  throw std::logic_error("unreachable gate kind");
}

GateKind gate_kind_from_name(const std::string& name) {
  if (name == "H") return GateKind::H;
  if (name == "X") return GateKind::X;
  if (name == "RZ") return GateKind::RZ;
  if (name == "RY") return GateKind::RY;
  if (name == "CRZ") return GateKind::CRZ;
  if (name == "CNOT") return GateKind::CNOT;
  throw std::invalid_argument("unknown gate kind: " + name);
}

void validate_gate(const Gate& gate, int n_qubits) {
  auto check_index = [&](int q, const char* what) {
    if (q < 0 || q >= n_qubits) {
      throw std::invalid_argument(std::string(what) + " index out of range for " +
                                  gate_kind_name(gate.kind));
    }
  };
  check_index(gate.target, "target");
  if (gate.is_two_qubit()) {
    check_index(gate.control, "control");
    if (gate.control == gate.target) {
      throw std::invalid_argument("control and target must differ");
    }
  } else if (gate.control != -1) {
    throw std::invalid_argument("single-qubit gate must not carry a control");
  }
  if (gate.is_rotation()) {
    if (gate.source == AngleSource::none) {
      throw std::invalid_argument(std::string(gate_kind_name(gate.kind)) +
                                  " needs an angle source");
    }
    if (gate.needs_resolved_angle() && gate.slot < 0) {
      throw std::invalid_argument("rotation slot index must be >= 0");
    }
  } else if (gate.source != AngleSource::none) {
    throw std::invalid_argument(std::string(gate_kind_name(gate.kind)) + " takes no angle");
  }
  if (gate.kind == GateKind::RZ || gate.kind == GateKind::RY || gate.kind == GateKind::CRZ) {
    if (gate.kind != GateKind::RZ && gate.source == AngleSource::input) {
      throw std::invalid_argument("input slots are only used by encoding RZ gates");
    }
  }
}

double resolve_gate_angle(const Gate& gate, std::span<const double> inputs,
                          std::span<const double> params) {
  switch (gate.source) {
    case AngleSource::none:
      return 0.0;
    case AngleSource::fixed:
      return gate.fixed_angle;
    case AngleSource::param:
      if (gate.slot < 0 || static_cast<std::size_t>(gate.slot) >= params.size()) {
        throw std::out_of_range("parameter slot out of range");
      }
      return params[static_cast<std::size_t>(gate.slot)];
    case AngleSource::input:
      if (gate.slot < 0 || static_cast<std::size_t>(gate.slot) >= inputs.size()) {
        throw std::out_of_range("input slot out of range");
      }
      return inputs[static_cast<std::size_t>(gate.slot)];
  }
  throw std::logic_error("unreachable angle source");
}

}  // namespace qmlp
