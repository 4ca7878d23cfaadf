#pragma once

#include <cstdint>
#include <string>

#include "qbench/statevector.hpp"
#include "qbench/transpiler.hpp"

namespace qbench {

// Stochastic Pauli-injection model: after each noisy basis gate a uniform
// non-identity Pauli is injected on its qubit(s) with probability p1 (1q)
// or p2 (2q); rz and id are noiseless; measured bits flip with p_readout.
struct NoiseModel {
  double p1 = 3e-4;
  double p2 = 8e-3;
  double p_readout = 1.5e-2;
  std::uint64_t seed = 0;
};

NoiseModel noise_from_json(const std::string& text);
std::string noise_to_json(const NoiseModel& nm);
NoiseModel load_noise(const std::string& path);

// Monte Carlo trajectories over the active-qubit reduction of tc (cap 20
// qubits). Shots run in parallel; the result depends only on
// (tc, nm, shots), never on the thread count.
CountsDistribution noisy_sample(const TranspiledCircuit& tc, const NoiseModel& nm,
                                long long shots);

}  // namespace qbench
