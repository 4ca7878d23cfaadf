#include <cstdint>

#include "qbench/statevector.hpp"

// Straight-line reference kernels. The parallel versions in kernels.cpp are
// checked against these in the test suite and in bench/bench_kernels.cpp.

namespace qbench::serial {

void apply_1q(cd* amps, int n_qubits, int target, const Mat2& m) {
  const std::int64_t size = std::int64_t(1) << n_qubits;
  const std::int64_t bit = std::int64_t(1) << target;
  for (std::int64_t i = 0; i < size; ++i) {
    if (i & bit) continue;
    const cd a0 = amps[i], a1 = amps[i | bit];
    amps[i] = m[0] * a0 + m[1] * a1;
    amps[i | bit] = m[2] * a0 + m[3] * a1;
  }
}

void apply_2q(cd* amps, int n_qubits, int q_first, int q_second, const Mat4& m) {
  const std::int64_t size = std::int64_t(1) << n_qubits;
  const std::int64_t bf = std::int64_t(1) << q_first;
  const std::int64_t bs = std::int64_t(1) << q_second;
  for (std::int64_t i = 0; i < size; ++i) {
    if (i & (bf | bs)) continue;
    const cd a0 = amps[i], a1 = amps[i | bs], a2 = amps[i | bf],
             a3 = amps[i | bf | bs];
    amps[i] = m[0] * a0 + m[1] * a1 + m[2] * a2 + m[3] * a3;
    amps[i | bs] = m[4] * a0 + m[5] * a1 + m[6] * a2 + m[7] * a3;
    amps[i | bf] = m[8] * a0 + m[9] * a1 + m[10] * a2 + m[11] * a3;
    amps[i | bf | bs] = m[12] * a0 + m[13] * a1 + m[14] * a2 + m[15] * a3;
  }
}

}  // namespace qbench::serial
