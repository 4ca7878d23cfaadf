#include <cstdint>

#include "qbench/statevector.hpp"

// OpenMP kernels. The loops are blocked so every inner run is contiguous:
// that keeps the single-thread cost at the level of the serial reference
// while the collapsed outer loops expose 2^(n-1) (resp. 2^(n-2)) iterations
// to the scheduler regardless of which qubits are hit.

namespace qbench::kernels {

void apply_1q(cd* amps, int n_qubits, int target, const Mat2& m) {
  const std::int64_t size = std::int64_t(1) << n_qubits;
  const std::int64_t bit = std::int64_t(1) << target;
  const cd m00 = m[0], m01 = m[1], m10 = m[2], m11 = m[3];
#pragma omp parallel for collapse(2) schedule(static)
  for (std::int64_t block = 0; block < size; block += 2 * bit)
    for (std::int64_t off = 0; off < bit; ++off) {
      const std::int64_t i0 = block + off;
      const std::int64_t i1 = i0 + bit;
      const cd a0 = amps[i0], a1 = amps[i1];
      amps[i0] = m00 * a0 + m01 * a1;
      amps[i1] = m10 * a0 + m11 * a1;
    }
}

void apply_2q(cd* amps, int n_qubits, int q_first, int q_second, const Mat4& m) {
  const std::int64_t size = std::int64_t(1) << n_qubits;
  const std::int64_t bf = std::int64_t(1) << q_first;
  const std::int64_t bs = std::int64_t(1) << q_second;
  const std::int64_t blo = bf < bs ? bf : bs;
  const std::int64_t bhi = bf < bs ? bs : bf;
#pragma omp parallel for collapse(3) schedule(static)
  for (std::int64_t outer = 0; outer < size; outer += 2 * bhi)
    for (std::int64_t mid = 0; mid < bhi; mid += 2 * blo)
      for (std::int64_t off = 0; off < blo; ++off) {
        const std::int64_t base = outer + mid + off;
        // vector order: (bit of q_first, bit of q_second) = 00, 01, 10, 11
        const std::int64_t i00 = base;
        const std::int64_t i01 = base | bs;
        const std::int64_t i10 = base | bf;
        const std::int64_t i11 = base | bf | bs;
        const cd a0 = amps[i00], a1 = amps[i01], a2 = amps[i10], a3 = amps[i11];
        amps[i00] = m[0] * a0 + m[1] * a1 + m[2] * a2 + m[3] * a3;
        amps[i01] = m[4] * a0 + m[5] * a1 + m[6] * a2 + m[7] * a3;
        amps[i10] = m[8] * a0 + m[9] * a1 + m[10] * a2 + m[11] * a3;
        amps[i11] = m[12] * a0 + m[13] * a1 + m[14] * a2 + m[15] * a3;
      }
}

}  // namespace qbench::kernels
