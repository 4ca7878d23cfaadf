#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qbench/circuit.hpp"
#include "qbench/gates.hpp"

namespace qbench {

struct Statevector {
  int n_qubits = 0;
  std::vector<cd> amplitudes;
};

// Shot histogram or probability view. shots == 0 means the entries are
// probabilities; otherwise they are integer counts summing to shots.
struct CountsDistribution {
  long long shots = 0;
  std::map<std::string, double> entries;
};

// OpenMP gate kernels. Both operate in place; the 4x4 matrix uses the
// |q_first q_second> basis convention of gates.hpp.
namespace kernels {
void apply_1q(cd* amps, int n_qubits, int target, const Mat2& m);
void apply_2q(cd* amps, int n_qubits, int q_first, int q_second, const Mat4& m);
}  // namespace kernels

// Serial reference kernels, kept for correctness tests and the benchmark.
namespace serial {
void apply_1q(cd* amps, int n_qubits, int target, const Mat2& m);
void apply_2q(cd* amps, int n_qubits, int q_first, int q_second, const Mat4& m);
}  // namespace serial

Statevector zero_state(int n_qubits);

// Applies one gate instruction (composites recurse; measure/barrier are
// no-ops for the state).
void apply_instruction(Statevector& sv, const Instruction& ins);

Statevector simulate(const Circuit& c);

// Bitstring convention everywhere: qubit 0 is the rightmost character.
std::string index_to_bitstring(std::uint64_t index, int n_bits);

CountsDistribution sample_counts(const Statevector& sv, long long shots,
                                 std::uint64_t seed);

std::vector<double> probabilities(const Statevector& sv);

CountsDistribution ideal_distribution(Family family, int n);

// Dense double-precision statevector footprint: 16 * 2^n bytes.
std::uint64_t memory_required(int n_qubits);
std::string memory_gb_label(int n_qubits);  // GiB rendered with a "GB" label

std::string counts_to_json(const CountsDistribution& d);
CountsDistribution counts_from_json(const std::string& text);
std::string statevector_to_csv(const Statevector& sv);

}  // namespace qbench
