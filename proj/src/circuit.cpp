#include "qmlp/circuit.hpp"

#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "qmlp/rng.hpp"

namespace qmlp {

using nlohmann::json;

std::vector<Gate> build_encoding(int n_qubits) {
  if (n_qubits < 1) throw std::invalid_argument("encoding needs at least one qubit");
  std::vector<Gate> gates;
  gates.reserve(2 * static_cast<std::size_t>(n_qubits));
  for (int q = 0; q < n_qubits; ++q) {
    gates.push_back(Gate::h(q));
    gates.push_back(Gate::rz_input(q, q));
  }
  return gates;
}

std::vector<Gate> build_parametric_layer(int n_qubits, int param_offset) {
  if (n_qubits < 2) throw std::invalid_argument("parametric layer needs at least two qubits");
  std::vector<Gate> gates;
  gates.reserve(2 * static_cast<std::size_t>(n_qubits));
  for (int q = 0; q < n_qubits; ++q) {
    gates.push_back(Gate::crz_param(q, (q + 1) % n_qubits, param_offset + q));
  }
  for (int q = 0; q < n_qubits; ++q) {
    gates.push_back(Gate::ry_param(q, param_offset + n_qubits + q));
  }
  return gates;
}

CircuitSpec build_hidden_layer(const HiddenLayerSpec& spec) {
  if (spec.n_parametric_layers < 1) {
    throw std::invalid_argument("hidden layer needs at least one parametric layer");
  }
  CircuitSpec circuit;
  circuit.n_qubits = spec.n_qubits;
  circuit.n_inputs = spec.n_qubits;
  circuit.n_params = spec.param_count();
  circuit.gates = build_encoding(spec.n_qubits);
  for (int layer = 0; layer < spec.n_parametric_layers; ++layer) {
    auto block = build_parametric_layer(spec.n_qubits, 2 * spec.n_qubits * layer);
    circuit.gates.insert(circuit.gates.end(), block.begin(), block.end());
  }
  validate_circuit(circuit);
  return circuit;
}

void validate_circuit(const CircuitSpec& circuit) {
  if (circuit.n_qubits < 1 || circuit.n_qubits > kMaxQubits) {
    throw std::invalid_argument("circuit qubit count out of range");
  }
  std::vector<int> param_uses(static_cast<std::size_t>(circuit.n_params), 0);
  std::vector<int> input_uses(static_cast<std::size_t>(circuit.n_inputs), 0);
  for (const Gate& gate : circuit.gates) {
    validate_gate(gate, circuit.n_qubits);
    if (gate.source == AngleSource::param) {
      if (gate.slot >= circuit.n_params) throw std::invalid_argument("parameter slot out of range");
      ++param_uses[static_cast<std::size_t>(gate.slot)];
    } else if (gate.source == AngleSource::input) {
      if (gate.slot >= circuit.n_inputs) throw std::invalid_argument("input slot out of range");
      if (gate.kind != GateKind::RZ) {
        throw std::invalid_argument("input slots belong to encoding RZ gates");
      }
      ++input_uses[static_cast<std::size_t>(gate.slot)];
    }
  }
  for (int uses : param_uses) {
    if (uses != 1) throw std::invalid_argument("every parameter slot must be used exactly once");
  }
  for (int uses : input_uses) {
    if (uses != 1) throw std::invalid_argument("every input slot must be used exactly once");
  }
}

namespace {

void check_lengths(const CircuitSpec& circuit, std::span<const double> inputs,
                   std::span<const double> params) {
  if (inputs.size() != static_cast<std::size_t>(circuit.n_inputs)) {
    throw std::invalid_argument("input vector length mismatch");
  }
  if (params.size() != static_cast<std::size_t>(circuit.n_params)) {
    throw std::invalid_argument("parameter vector length mismatch");
  }
}

}  // namespace

QuantumState run_statevector(const CircuitSpec& circuit, std::span<const double> inputs,
                             std::span<const double> params) {
  check_lengths(circuit, inputs, params);
  QuantumState state = zero_state(circuit.n_qubits);
  for (const Gate& gate : circuit.gates) {
    if (gate.is_rotation()) {
      apply_gate(state, gate, resolve_gate_angle(gate, inputs, params));
    } else {
      apply_gate(state, gate);
    }
  }
  return state;
}

DensityMatrix run_density(const CircuitSpec& circuit, std::span<const double> inputs,
                          std::span<const double> params, const NoiseConfig& noise) {
  check_lengths(circuit, inputs, params);
  const double p1 = noise.effective_p1();
  const double p2 = noise.effective_p2();
  DensityMatrix rho = zero_density(circuit.n_qubits);
  for (const Gate& gate : circuit.gates) {
    if (gate.is_rotation()) {
      apply_gate_density(rho, gate, resolve_gate_angle(gate, inputs, params));
    } else {
      apply_gate_density(rho, gate);
    }
    if (gate.is_two_qubit()) {
      apply_depolarizing(rho, gate.control, gate.target, p2);
    } else {
      apply_depolarizing(rho, gate.target, p1);
    }
  }
  return rho;
}

std::vector<double> eval_hidden_layer(const CircuitSpec& circuit, std::span<const double> inputs,
                                      std::span<const double> params,
                                      const std::optional<NoiseConfig>& noise,
                                      std::optional<std::uint64_t> seed) {
  std::vector<double> expectations(static_cast<std::size_t>(circuit.n_qubits));
  if (!noise.has_value()) {
    const QuantumState state = run_statevector(circuit, inputs, params);
    for (int q = 0; q < circuit.n_qubits; ++q) {
      expectations[static_cast<std::size_t>(q)] = pauli_z_expectation(state, q);
    }
    return expectations;
  }
  if (noise->shots.has_value() && !seed.has_value()) {
    throw std::invalid_argument("shot-sampled evaluation requires a seed");
  }
  const DensityMatrix rho = run_density(circuit, inputs, params, *noise);
  for (int q = 0; q < circuit.n_qubits; ++q) {
    std::optional<std::uint64_t> qubit_seed;
    if (noise->shots.has_value()) {
      qubit_seed = derive_seed(*seed, static_cast<std::uint64_t>(q));
    }
    expectations[static_cast<std::size_t>(q)] =
        pauli_z_expectation_density(rho, q, noise->shots, qubit_seed);
  }
  return expectations;
}

std::string circuit_to_json(const CircuitSpec& circuit) {
  json gates = json::array();
  for (const Gate& gate : circuit.gates) {
    json g;
    g["kind"] = gate_kind_name(gate.kind);
    if (gate.is_two_qubit()) {
      g["targets"] = {gate.control, gate.target};
    } else {
      g["targets"] = {gate.target};
    }
    switch (gate.source) {
      case AngleSource::none: break;
      case AngleSource::fixed: g["angle"] = gate.fixed_angle; break;
      case AngleSource::param: g["param"] = gate.slot; break;
      case AngleSource::input: g["input"] = gate.slot; break;
    }
    gates.push_back(g);
  }
  json doc;
  doc["n_qubits"] = circuit.n_qubits;
  doc["n_params"] = circuit.n_params;
  doc["n_inputs"] = circuit.n_inputs;
  doc["gates"] = gates;
  return doc.dump();
}

CircuitSpec circuit_from_json(const std::string& text) {
  const json doc = json::parse(text);
  CircuitSpec circuit;
  circuit.n_qubits = doc.at("n_qubits").get<int>();
  circuit.n_params = doc.at("n_params").get<int>();
  circuit.n_inputs = doc.at("n_inputs").get<int>();
  for (const json& g : doc.at("gates")) {
    Gate gate;
    gate.kind = gate_kind_from_name(g.at("kind").get<std::string>());
    const auto targets = g.at("targets").get<std::vector<int>>();
    if (gate.is_two_qubit()) {
      if (targets.size() != 2) throw std::invalid_argument("two-qubit gate needs two targets");
      gate.control = targets[0];
      gate.target = targets[1];
    } else {
      if (targets.size() != 1) throw std::invalid_argument("single-qubit gate needs one target");
      gate.target = targets[0];
    }
    if (g.contains("angle")) {
      gate.source = AngleSource::fixed;
      gate.fixed_angle = g.at("angle").get<double>();
    } else if (g.contains("param")) {
      gate.source = AngleSource::param;
      gate.slot = g.at("param").get<int>();
    } else if (g.contains("input")) {
      gate.source = AngleSource::input;
      gate.slot = g.at("input").get<int>();
    }
    circuit.gates.push_back(gate);
  }
  validate_circuit(circuit);
  return circuit;
}

}  // namespace qmlp
