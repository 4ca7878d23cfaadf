#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace qbench {

using cd = std::complex<double>;
using Mat2 = std::array<cd, 4>;   // row-major 2x2
using Mat4 = std::array<cd, 16>;  // row-major 4x4

// Two-qubit matrices use the basis |q_first q_second>, i.e. the first
// operand qubit is the most significant bit of the 2-bit row/column index.

inline Mat2 mat_id() { return {1, 0, 0, 1}; }
inline Mat2 mat_x() { return {0, 1, 1, 0}; }
inline Mat2 mat_y() { return {cd(0, 0), cd(0, -1), cd(0, 1), cd(0, 0)}; }
inline Mat2 mat_z() { return {1, 0, 0, -1}; }

inline Mat2 mat_h() {
  const double s = 1.0 / std::sqrt(2.0);
  return {s, s, s, -s};
}

inline Mat2 mat_sx() {
  return {cd(0.5, 0.5), cd(0.5, -0.5), cd(0.5, -0.5), cd(0.5, 0.5)};
}

inline Mat2 mat_rz(double theta) {
  return {std::polar(1.0, -theta / 2), 0, 0, std::polar(1.0, theta / 2)};
}

inline Mat2 mat_ry(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return {c, -s, s, c};
}

inline Mat2 mat_rx(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return {cd(c, 0), cd(0, -s), cd(0, -s), cd(c, 0)};
}

inline Mat2 mul2(const Mat2& a, const Mat2& b) {
  Mat2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      r[i * 2 + j] = a[i * 2] * b[j] + a[i * 2 + 1] * b[2 + j];
  return r;
}

inline Mat4 mul4(const Mat4& a, const Mat4& b) {
  Mat4 r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      cd s = 0;
      for (int k = 0; k < 4; ++k) s += a[i * 4 + k] * b[k * 4 + j];
      r[i * 4 + j] = s;
    }
  return r;
}

inline Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          r[(i * 2 + k) * 4 + (j * 2 + l)] = a[i * 2 + j] * b[k * 2 + l];
  return r;
}

inline Mat4 mat_cx() {
  return {1, 0, 0, 0,
          0, 1, 0, 0,
          0, 0, 0, 1,
          0, 0, 1, 0};
}

inline Mat4 mat_cp(double theta) {
  Mat4 r{};
  r[0] = r[5] = r[10] = 1;
  r[15] = std::polar(1.0, theta);
  return r;
}

inline Mat4 mat_cry(double theta) {
  Mat4 r{};
  r[0] = r[5] = 1;
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  r[10] = c;
  r[11] = -s;
  r[14] = s;
  r[15] = c;
  return r;
}

inline Mat4 mat_swap() {
  return {1, 0, 0, 0,
          0, 0, 1, 0,
          0, 1, 0, 0,
          0, 0, 0, 1};
}

// ECR = (I(x)X - X(x)Y) / sqrt(2), first operand in the left tensor slot.
inline Mat4 mat_ecr() {
  Mat4 ix = kron(mat_id(), mat_x());
  Mat4 xy = kron(mat_x(), mat_y());
  Mat4 r{};
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < 16; ++i) r[i] = s * (ix[i] - xy[i]);
  return r;
}

}  // namespace qbench
