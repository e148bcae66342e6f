#include <cmath>
#include <numbers>

#include <doctest.h>

#include "qmlp/circuit.hpp"
#include "qmlp/reference.hpp"
#include "support.hpp"

using namespace qmlp;
using testsupport::random_layer_case;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("encoding is H then RZ per qubit") {
  const auto one = build_encoding(1);
  REQUIRE(one.size() == 2);
  CHECK(one[0].kind == GateKind::H);
  CHECK(one[0].target == 0);
  CHECK(one[1].kind == GateKind::RZ);
  CHECK(one[1].source == AngleSource::input);
  CHECK(one[1].slot == 0);

  const auto four = build_encoding(4);
  CHECK(four.size() == 8);
  int input_slots = 0;
  for (const Gate& gate : four) {
    if (gate.source == AngleSource::input) ++input_slots;
  }
  CHECK(input_slots == 4);
  CHECK_THROWS_AS(build_encoding(0), std::invalid_argument);
}

TEST_CASE("encoded qubits always read <Z> = 0") {
  CircuitSpec circuit;
  circuit.n_qubits = 1;
  circuit.gates = build_encoding(1);
  circuit.n_inputs = 1;
  validate_circuit(circuit);
  for (int i = 0; i <= 40; ++i) {
    const double x = -2 * kPi + i * (4 * kPi / 40);
    const double inputs[] = {x};
    const auto e = eval_hidden_layer(circuit, inputs, {});
    CHECK(std::abs(e[0]) < 1e-12);
  }
}

TEST_CASE("parametric layer is a CRZ ring followed by RY rotations") {
  const auto layer = build_parametric_layer(4, 8);
  REQUIRE(layer.size() == 8);
  for (int q = 0; q < 4; ++q) {
    CHECK(layer[static_cast<std::size_t>(q)].kind == GateKind::CRZ);
    CHECK(layer[static_cast<std::size_t>(q)].control == q);
    CHECK(layer[static_cast<std::size_t>(q)].target == (q + 1) % 4);
    CHECK(layer[static_cast<std::size_t>(q)].slot == 8 + q);
  }
  for (int q = 0; q < 4; ++q) {
    CHECK(layer[static_cast<std::size_t>(4 + q)].kind == GateKind::RY);
    CHECK(layer[static_cast<std::size_t>(4 + q)].target == q);
    CHECK(layer[static_cast<std::size_t>(4 + q)].slot == 12 + q);
  }

  const auto two = build_parametric_layer(2, 0);
  REQUIRE(two.size() == 4);
  CHECK(two[0].control == 0);
  CHECK(two[0].target == 1);
  CHECK(two[1].control == 1);
  CHECK(two[1].target == 0);
  CHECK(two[2].kind == GateKind::RY);
  CHECK(two[3].kind == GateKind::RY);

  CHECK_THROWS_AS(build_parametric_layer(1, 0), std::invalid_argument);
}

TEST_CASE("hidden layer slot and gate counts follow 2nL") {
  const CircuitSpec iris = build_hidden_layer({4, 2});
  CHECK(iris.n_params == 16);
  CHECK(iris.n_inputs == 4);

  const CircuitSpec small = build_hidden_layer({2, 1});
  CHECK(small.n_params == 4);
  CHECK(small.gates.size() == 8);

  CHECK(build_hidden_layer({4, 4}).n_params == 32);

  for (int n = 2; n <= 5; ++n) {
    for (int layers = 1; layers <= 4; ++layers) {
      const CircuitSpec circuit = build_hidden_layer({n, layers});
      CHECK(circuit.n_params == 2 * n * layers);
      CHECK(circuit.gates.size() == static_cast<std::size_t>(2 * n + 2 * n * layers));
    }
  }
  CHECK_THROWS_AS(build_hidden_layer({1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(build_hidden_layer({3, 0}), std::invalid_argument);
}

TEST_CASE("all-zero parameters leave the encoded expectations") {
  for (int n = 2; n <= 4; ++n) {
    const CircuitSpec circuit = build_hidden_layer({n, 2});
    std::vector<double> inputs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) inputs[static_cast<std::size_t>(i)] = 0.3 * (i + 1);
    const std::vector<double> params(static_cast<std::size_t>(circuit.n_params), 0.0);
    const auto e = eval_hidden_layer(circuit, inputs, params);
    for (double v : e) CHECK(std::abs(v) < 1e-12);
  }
}

TEST_CASE("zero noise scale reproduces the noiseless path") {
  const auto c = random_layer_case(3, 2, 11);
  const auto ideal = eval_hidden_layer(c.circuit, c.inputs, c.params);
  NoiseConfig off;
  off.scale = 0.0;
  const auto noisy = eval_hidden_layer(c.circuit, c.inputs, c.params, off);
  for (std::size_t q = 0; q < ideal.size(); ++q) CHECK(std::abs(ideal[q] - noisy[q]) < 1e-9);
}

TEST_CASE("fully depolarizing single-qubit noise wipes out every expectation") {
  const auto c = random_layer_case(2, 1, 12);
  NoiseConfig full;
  full.p1 = 1.0;
  full.p2 = 0.0;
  full.scale = 1.0;
  const auto e = eval_hidden_layer(c.circuit, c.inputs, c.params, full);
  for (double v : e) CHECK(std::abs(v) < 1e-9);
}

TEST_CASE("noise config validation") {
  NoiseConfig bad;
  bad.p1 = 1.2;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = {};
  bad.scale = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  // Scaling must not push an effective probability past 1.
  bad = {};
  bad.p2 = 0.5;
  bad.scale = 4.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  NoiseConfig ok;
  ok.scale = 4.0;
  CHECK_NOTHROW(ok.validate());
}

TEST_CASE("noisy path matches the dense reference") {
  const auto c = random_layer_case(2, 2, 13);
  NoiseConfig noise;
  noise.scale = 2.0;
  const DensityMatrix fast = run_density(c.circuit, c.inputs, c.params, noise);
  const ref::CMatrix dense = ref::run_density(c.circuit, c.inputs, c.params, noise);
  for (std::size_t r = 0; r < fast.dim(); ++r) {
    for (std::size_t c2 = 0; c2 < fast.dim(); ++c2) {
      CHECK(std::abs(fast.at(r, c2) -
                     dense(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c2))) < 1e-10);
    }
  }
}

TEST_CASE("mean deviation from ideal grows with the noise scale") {
  const CircuitSpec circuit = build_hidden_layer({2, 2});
  const double scales[] = {0.0, 0.25, 0.5, 1.0, 2.0, 4.0};
  double previous = -1.0;
  for (double scale : scales) {
    double deviation = 0.0;
    int count = 0;
    for (std::uint64_t draw = 0; draw < 20; ++draw) {
      const auto c = random_layer_case(2, 2, 100 + draw);
      const auto ideal = eval_hidden_layer(c.circuit, c.inputs, c.params);
      NoiseConfig noise;
      noise.scale = scale;
      const auto noisy = eval_hidden_layer(c.circuit, c.inputs, c.params, noise);
      for (std::size_t q = 0; q < ideal.size(); ++q) {
        deviation += std::abs(noisy[q] - ideal[q]);
        ++count;
      }
    }
    deviation /= count;
    CHECK(deviation >= previous - 1e-15);
    previous = deviation;
  }
}

TEST_CASE("identical evaluation calls are bit-identical") {
  const auto c = random_layer_case(3, 3, 14);
  const auto a = eval_hidden_layer(c.circuit, c.inputs, c.params);
  const auto b = eval_hidden_layer(c.circuit, c.inputs, c.params);
  CHECK(a == b);

  NoiseConfig shots;
  shots.scale = 1.0;
  shots.shots = 500;
  const auto s1 = eval_hidden_layer(c.circuit, c.inputs, c.params, shots, 777);
  const auto s2 = eval_hidden_layer(c.circuit, c.inputs, c.params, shots, 777);
  CHECK(s1 == s2);
  CHECK_THROWS_AS(eval_hidden_layer(c.circuit, c.inputs, c.params, shots, std::nullopt),
                  std::invalid_argument);
}

TEST_CASE("evaluation validates vector lengths") {
  const CircuitSpec circuit = build_hidden_layer({2, 1});
  const std::vector<double> good_inputs(2, 0.1);
  const std::vector<double> good_params(4, 0.1);
  CHECK_NOTHROW(eval_hidden_layer(circuit, good_inputs, good_params));
  const std::vector<double> bad_inputs(3, 0.1);
  CHECK_THROWS_AS(eval_hidden_layer(circuit, bad_inputs, good_params), std::invalid_argument);
  const std::vector<double> bad_params(5, 0.1);
  CHECK_THROWS_AS(eval_hidden_layer(circuit, good_inputs, bad_params), std::invalid_argument);
}

TEST_CASE("circuit JSON round trip") {
  const CircuitSpec circuit = build_hidden_layer({3, 2});
  const std::string text = circuit_to_json(circuit);
  const CircuitSpec loaded = circuit_from_json(text);
  CHECK(loaded.n_qubits == circuit.n_qubits);
  CHECK(loaded.n_params == circuit.n_params);
  CHECK(loaded.n_inputs == circuit.n_inputs);
  REQUIRE(loaded.gates.size() == circuit.gates.size());
  for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
    CHECK(loaded.gates[i].kind == circuit.gates[i].kind);
    CHECK(loaded.gates[i].control == circuit.gates[i].control);
    CHECK(loaded.gates[i].target == circuit.gates[i].target);
    CHECK(loaded.gates[i].source == circuit.gates[i].source);
    CHECK(loaded.gates[i].slot == circuit.gates[i].slot);
  }

  const auto c = random_layer_case(3, 2, 15);
  const auto before = eval_hidden_layer(circuit, c.inputs, c.params);
  const auto after = eval_hidden_layer(loaded, c.inputs, c.params);
  CHECK(before == after);
}

TEST_CASE("circuit validation rejects slot misuse") {
  CircuitSpec circuit = build_hidden_layer({2, 1});
  circuit.gates.push_back(Gate::ry_param(0, 0));  // duplicate slot use
  CHECK_THROWS_AS(validate_circuit(circuit), std::invalid_argument);

  circuit = build_hidden_layer({2, 1});
  circuit.n_params += 1;  // slot 4 never used
  CHECK_THROWS_AS(validate_circuit(circuit), std::invalid_argument);

  circuit = build_hidden_layer({2, 1});
  circuit.gates[1] = Gate::ry_param(0, 0);  // input slot 0 lost, param 0 doubled
  CHECK_THROWS_AS(validate_circuit(circuit), std::invalid_argument);
}
