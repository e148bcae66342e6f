// Benchmark: OpenMP bit-kernel simulator vs. the serial dense-matrix
// reference, statevector and density paths.
//
//   ./qmlp_bench [max_qubits_statevector] [max_qubits_density]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include <omp.h>

#include "qmlp/circuit.hpp"
#include "qmlp/gradients.hpp"
#include "qmlp/reference.hpp"
#include "qmlp/rng.hpp"

using namespace qmlp;

namespace {

struct BenchCase {
  CircuitSpec circuit;
  std::vector<double> inputs;
  std::vector<double> params;
};

BenchCase make_case(int n_qubits, int layers, std::uint64_t seed) {
  BenchCase bench;
  bench.circuit = build_hidden_layer({n_qubits, layers});
  SplitMix64 rng(seed);
  bench.inputs.resize(static_cast<std::size_t>(bench.circuit.n_inputs));
  bench.params.resize(static_cast<std::size_t>(bench.circuit.n_params));
  for (double& v : bench.inputs) v = rng.next_in(-3.14, 3.14);
  for (double& v : bench.params) v = rng.next_in(-3.14, 3.14);
  return bench;
}

template <typename F>
double time_ms(F&& body, int reps) {
  // One warmup, then the best of `reps`.
  body();
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto start = std::chrono::steady_clock::now();
    body();
    const auto stop = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(stop - start).count());
  }
  return best;
}

volatile double g_sink = 0.0;

}  // namespace

int main(int argc, char** argv) {
  const int max_sv = argc > 1 ? std::atoi(argv[1]) : 12;
  const int max_dm = argc > 2 ? std::atoi(argv[2]) : 8;
  const int threads = omp_get_max_threads();

  std::printf("statevector path: %d-layer circuits, best-of-5 times\n", 4);
  std::printf("%8s %12s %12s %12s %10s %10s\n", "qubits", "ref_ms", "fast1_ms", "fastN_ms",
              "ref/fastN", "fast1/fastN");
  for (int n = 4; n <= max_sv; n += 2) {
    const BenchCase bench = make_case(n, 4, 42);
    const int reps = n <= 8 ? 20 : 5;

    omp_set_num_threads(1);
    const double fast1 = time_ms(
        [&] {
          const auto e = eval_hidden_layer(bench.circuit, bench.inputs, bench.params);
          g_sink = e[0];
        },
        reps);
    omp_set_num_threads(threads);
    const double fastn = time_ms(
        [&] {
          const auto e = eval_hidden_layer(bench.circuit, bench.inputs, bench.params);
          g_sink = e[0];
        },
        reps);
    double ref_time = -1.0;
    if (n <= 10) {
      ref_time = time_ms(
          [&] {
            const auto v = ref::run_statevector(bench.circuit, bench.inputs, bench.params);
            g_sink = ref::pauli_z_expectation(v, 0, n);
          },
          n <= 6 ? 5 : 2);
    }
    if (ref_time >= 0) {
      std::printf("%8d %12.3f %12.3f %12.3f %10.1f %10.2f\n", n, ref_time, fast1, fastn,
                  ref_time / fastn, fast1 / fastn);
    } else {
      std::printf("%8d %12s %12.3f %12.3f %10s %10.2f\n", n, "-", fast1, fastn, "-",
                  fast1 / fastn);
    }
  }

  std::printf("\ndensity path with per-gate depolarizing channels\n");
  std::printf("%8s %12s %12s %12s %10s %10s\n", "qubits", "ref_ms", "fast1_ms", "fastN_ms",
              "ref/fastN", "fast1/fastN");
  NoiseConfig noise;
  noise.scale = 1.0;
  for (int n = 2; n <= max_dm; n += 2) {
    const BenchCase bench = make_case(n, 2, 43);
    const int reps = n <= 6 ? 10 : 3;

    omp_set_num_threads(1);
    const double fast1 = time_ms(
        [&] {
          const auto rho = run_density(bench.circuit, bench.inputs, bench.params, noise);
          g_sink = pauli_z_expectation(rho, 0);
        },
        reps);
    omp_set_num_threads(threads);
    const double fastn = time_ms(
        [&] {
          const auto rho = run_density(bench.circuit, bench.inputs, bench.params, noise);
          g_sink = pauli_z_expectation(rho, 0);
        },
        reps);
    double ref_time = -1.0;
    if (n <= 6) {
      ref_time = time_ms(
          [&] {
            const auto rho = ref::run_density(bench.circuit, bench.inputs, bench.params, noise);
            g_sink = ref::pauli_z_expectation(rho, 0, n);
          },
          2);
    }
    if (ref_time >= 0) {
      std::printf("%8d %12.3f %12.3f %12.3f %10.1f %10.2f\n", n, ref_time, fast1, fastn,
                  ref_time / fastn, fast1 / fastn);
    } else {
      std::printf("%8d %12s %12.3f %12.3f %10s %10.2f\n", n, "-", fast1, fastn, "-",
                  fast1 / fastn);
    }
  }

  std::printf("\nshift-rule Jacobian throughput (n=4, L=4)\n");
  {
    const BenchCase bench = make_case(4, 4, 44);
    omp_set_num_threads(1);
    const double serial = time_ms(
        [&] {
          const auto jac = parameter_shift_gradient(bench.circuit, bench.inputs, bench.params);
          g_sink = jac.d_out_d_params.at(0, 0);
        },
        10);
    omp_set_num_threads(threads);
    const double parallel = time_ms(
        [&] {
          const auto jac = parameter_shift_gradient(bench.circuit, bench.inputs, bench.params);
          g_sink = jac.d_out_d_params.at(0, 0);
        },
        10);
    std::printf("  serial %.3f ms, %d threads %.3f ms, speedup %.2f\n", serial, threads, parallel,
                serial / parallel);
  }
  return 0;
}
