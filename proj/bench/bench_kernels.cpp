// Compares the OpenMP gate kernels against the serial reference across
// statevector sizes. Run as: bench-kernels [--benchmark_filter=...]
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "qbench/gates.hpp"
#include "qbench/statevector.hpp"

using namespace qbench;

namespace {

std::vector<cd> random_amps(int n_qubits, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<cd> amps(std::size_t(1) << n_qubits);
  for (auto& a : amps) a = cd(g(rng), g(rng));
  return amps;
}

template <void (*Apply)(cd*, int, int, const Mat2&)>
void bench_1q(benchmark::State& state) {
  const int n = int(state.range(0));
  std::vector<cd> amps = random_amps(n, 1);
  const Mat2 m = mul2(mat_rz(0.7), mul2(mat_sx(), mat_ry(-1.3)));
  int target = 0;
  for (auto _ : state) {
    Apply(amps.data(), n, target, m);
    target = (target + 1) % n;
    benchmark::DoNotOptimize(amps.data());
  }
  state.SetItemsProcessed(state.iterations() * (std::int64_t(1) << n));
}

template <void (*Apply)(cd*, int, int, int, const Mat4&)>
void bench_2q(benchmark::State& state) {
  const int n = int(state.range(0));
  std::vector<cd> amps = random_amps(n, 2);
  const Mat4 m = mul4(mat_ecr(), mat_cp(0.4));
  int q = 0;
  for (auto _ : state) {
    Apply(amps.data(), n, q, (q + 1) % n, m);
    q = (q + 1) % n;
    benchmark::DoNotOptimize(amps.data());
  }
  state.SetItemsProcessed(state.iterations() * (std::int64_t(1) << n));
}

}  // namespace

BENCHMARK(bench_1q<serial::apply_1q>)->Name("serial/apply_1q")
    ->DenseRange(10, 24, 2)->Unit(benchmark::kMicrosecond);
BENCHMARK(bench_1q<kernels::apply_1q>)->Name("openmp/apply_1q")
    ->DenseRange(10, 24, 2)->Unit(benchmark::kMicrosecond);
BENCHMARK(bench_2q<serial::apply_2q>)->Name("serial/apply_2q")
    ->DenseRange(10, 24, 2)->Unit(benchmark::kMicrosecond);
BENCHMARK(bench_2q<kernels::apply_2q>)->Name("openmp/apply_2q")
    ->DenseRange(10, 24, 2)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
