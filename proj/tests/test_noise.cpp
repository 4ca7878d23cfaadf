#include <cmath>

#include "doctest.h"
#include "qbench/circuit.hpp"
#include "qbench/metrics.hpp"
#include "qbench/noise.hpp"
#include "qbench/target.hpp"
#include "qbench/transpiler.hpp"

using namespace qbench;

namespace {

TranspiledCircuit transpiled_ghz(int n) {
  return transpile(build_ghz(n), eagle127());
}

double mean_tvd_vs_ideal(int n, const NoiseModel& nm, int n_seeds) {
  const TranspiledCircuit tc = transpiled_ghz(n);
  const CountsDistribution ideal = ideal_distribution(Family::GHZ, n);
  double acc = 0;
  for (int s = 0; s < n_seeds; ++s) {
    NoiseModel m = nm;
    m.seed = 1000 + s;
    acc += tvd(noisy_sample(tc, m, 4096), ideal);
  }
  return acc / n_seeds;
}

}  // namespace

TEST_CASE("zero-noise sampling tracks the ideal ghz distribution") {
  NoiseModel nm;
  nm.p1 = nm.p2 = nm.p_readout = 0;
  nm.seed = 1;
  const CountsDistribution d = noisy_sample(transpiled_ghz(4), nm, 4096);
  CHECK(d.shots == 4096);
  for (const auto& [k, v] : d.entries) CHECK((k == "0000" || k == "1111"));
  CHECK(tvd(d, ideal_distribution(Family::GHZ, 4)) < 0.03);
}

TEST_CASE("counts sum to shots and keys have clbit length") {
  NoiseModel nm;
  nm.seed = 2;
  const CountsDistribution d = noisy_sample(transpiled_ghz(5), nm, 2048);
  double total = 0;
  for (const auto& [k, v] : d.entries) {
    CHECK(k.size() == 5);
    total += v;
  }
  CHECK(total == 2048);
}

TEST_CASE("readout probability one-half scrambles every bit") {
  NoiseModel nm;
  nm.p1 = nm.p2 = 0;
  nm.p_readout = 0.5;
  nm.seed = 3;
  const long long shots = 20000;
  const CountsDistribution d = noisy_sample(transpiled_ghz(4), nm, shots);
  for (int bit = 0; bit < 4; ++bit) {
    double ones = 0;
    for (const auto& [k, v] : d.entries)
      if (k[k.size() - 1 - bit] == '1') ones += v;
    CHECK(std::abs(ones / shots - 0.5) < 0.02);
  }
}

TEST_CASE("two-qubit noise leaks mass outside the ghz corners") {
  NoiseModel nm;
  nm.p1 = nm.p_readout = 0;
  nm.p2 = 0.05;
  nm.seed = 4;
  const CountsDistribution d = noisy_sample(transpiled_ghz(4), nm, 8192);
  double outside = 0;
  for (const auto& [k, v] : d.entries)
    if (k != "0000" && k != "1111") outside += v;
  CHECK(outside > 0);
}

TEST_CASE("distance to ideal grows with the two-qubit error rate") {
  NoiseModel low, mid, high;
  low.p2 = 0.002;
  mid.p2 = 0.02;
  high.p2 = 0.2;
  low.p1 = mid.p1 = high.p1 = 0;
  low.p_readout = mid.p_readout = high.p_readout = 0;
  const double a = mean_tvd_vs_ideal(4, low, 5);
  const double b = mean_tvd_vs_ideal(4, mid, 5);
  const double c = mean_tvd_vs_ideal(4, high, 5);
  CHECK(a <= b);
  CHECK(b <= c);
}

TEST_CASE("sampling is deterministic in the model seed") {
  const TranspiledCircuit tc = transpiled_ghz(4);
  NoiseModel nm;
  nm.seed = 77;
  const CountsDistribution a = noisy_sample(tc, nm, 4096);
  const CountsDistribution b = noisy_sample(tc, nm, 4096);
  CHECK(a.entries == b.entries);
  nm.seed = 78;
  const CountsDistribution c = noisy_sample(tc, nm, 4096);
  CHECK(a.entries != c.entries);
}

TEST_CASE("invalid probabilities and shot counts are rejected") {
  const TranspiledCircuit tc = transpiled_ghz(3);
  NoiseModel nm;
  nm.p2 = 1.5;
  CHECK_THROWS_AS(noisy_sample(tc, nm, 100), std::invalid_argument);
  nm.p2 = -0.1;
  CHECK_THROWS_AS(noisy_sample(tc, nm, 100), std::invalid_argument);
  nm = NoiseModel{};
  CHECK_THROWS_AS(noisy_sample(tc, nm, 0), std::invalid_argument);
}

TEST_CASE("the active-qubit reduction is capped at twenty qubits") {
  TranspiledCircuit tc;
  tc.circuit.n_qubits = 30;
  tc.circuit.n_clbits = 21;
  for (int q = 0; q < 21; ++q) {
    tc.circuit.add(GateKind::X, {q});
    tc.circuit.measure(q, q);
    tc.layout.initial[q] = q;
    tc.layout.final_permutation[q] = q;
  }
  CHECK_THROWS_AS(noisy_sample(tc, NoiseModel{}, 10), std::runtime_error);
}

TEST_CASE("a circuit without measurements cannot be sampled") {
  TranspiledCircuit tc;
  tc.circuit.n_qubits = 2;
  tc.circuit.add(GateKind::X, {0});
  tc.layout.initial = {{0, 0}};
  tc.layout.final_permutation = {{0, 0}};
  CHECK_THROWS_AS(noisy_sample(tc, NoiseModel{}, 10), std::runtime_error);
}

TEST_CASE("noise model json round-trips") {
  NoiseModel nm;
  nm.p1 = 1e-4;
  nm.p2 = 5e-3;
  nm.p_readout = 0.02;
  nm.seed = 9;
  const NoiseModel back = noise_from_json(noise_to_json(nm));
  CHECK(back.p1 == nm.p1);
  CHECK(back.p2 == nm.p2);
  CHECK(back.p_readout == nm.p_readout);
  CHECK(back.seed == nm.seed);
  // missing fields fall back to the defaults
  const NoiseModel defaults = noise_from_json("{}");
  CHECK(defaults.p1 == NoiseModel{}.p1);
  CHECK(defaults.p_readout == NoiseModel{}.p_readout);
}
