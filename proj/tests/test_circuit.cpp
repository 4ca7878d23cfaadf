#include <bit>
#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "qbench/circuit.hpp"
#include "qbench/statevector.hpp"

using namespace qbench;

namespace {

// Brute-force DFT matrix oracle: entry (c, a) = q^{-1/2} e^{2 pi i a c / q}.
std::vector<std::vector<cd>> dft_matrix(int n) {
  const std::uint64_t q = std::uint64_t(1) << n;
  std::vector<std::vector<cd>> m(q, std::vector<cd>(q));
  for (std::uint64_t c = 0; c < q; ++c)
    for (std::uint64_t a = 0; a < q; ++a)
      m[c][a] = std::polar(1.0 / std::sqrt(double(q)),
                           2.0 * M_PI * double(a) * double(c) / double(q));
  return m;
}

// Column-by-column circuit unitary via the serial reference kernels.
std::vector<std::vector<cd>> circuit_unitary(const Circuit& c) {
  const std::uint64_t q = std::uint64_t(1) << c.n_qubits;
  std::vector<std::vector<cd>> m(q, std::vector<cd>(q));
  for (std::uint64_t a = 0; a < q; ++a) {
    Statevector sv = zero_state(c.n_qubits);
    sv.amplitudes[0] = 0;
    sv.amplitudes[a] = 1;
    for (const auto& ins : c.instructions) apply_instruction(sv, ins);
    for (std::uint64_t r = 0; r < q; ++r) m[r][a] = sv.amplitudes[r];
  }
  return m;
}

double max_dev_up_to_phase(const std::vector<std::vector<cd>>& u,
                           const std::vector<std::vector<cd>>& v) {
  // phase reference: largest entry of v
  std::size_t ri = 0, ci = 0;
  double best = 0;
  for (std::size_t r = 0; r < v.size(); ++r)
    for (std::size_t c = 0; c < v.size(); ++c)
      if (std::abs(v[r][c]) > best) {
        best = std::abs(v[r][c]);
        ri = r;
        ci = c;
      }
  cd phase = u[ri][ci] / v[ri][ci];
  phase /= std::abs(phase);
  double dev = 0;
  for (std::size_t r = 0; r < v.size(); ++r)
    for (std::size_t c = 0; c < v.size(); ++c)
      dev = std::max(dev, std::abs(u[r][c] - phase * v[r][c]));
  return dev;
}

Circuit random_circuit(std::mt19937_64& rng) {
  Circuit c;
  c.n_qubits = 2 + int(rng() % 5);
  c.n_clbits = int(rng() % (c.n_qubits + 1));
  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  const GateKind pool[] = {GateKind::H,  GateKind::X,  GateKind::SX,
                           GateKind::RZ, GateKind::RY, GateKind::CX,
                           GateKind::CP, GateKind::CRY, GateKind::Swap,
                           GateKind::ECR, GateKind::Id};
  const int len = 1 + int(rng() % 20);
  for (int i = 0; i < len; ++i) {
    GateKind k = pool[rng() % 11];
    if (gate_arity(k) == 1) {
      c.add(k, {int(rng() % c.n_qubits)}, gate_has_angle(k) ? ang(rng) : 0.0);
    } else {
      int a = int(rng() % c.n_qubits), b = int(rng() % c.n_qubits);
      if (a == b) b = (b + 1) % c.n_qubits;
      c.add(k, {a, b}, gate_has_angle(k) ? ang(rng) : 0.0);
    }
    if (rng() % 7 == 0) c.barrier();
  }
  if (c.n_clbits > 0 && rng() % 2 == 0)
    c.measure(int(rng() % c.n_qubits), int(rng() % c.n_clbits));
  return c;
}

}  // namespace

TEST_CASE("qft on one qubit is a single hadamard") {
  Circuit c = build_qft(1, true, false);
  REQUIRE(c.instructions.size() == 1);
  CHECK(c.instructions[0].kind == GateKind::H);
}

TEST_CASE("boxed qft base stats match the reference rows") {
  for (int n = 4; n <= 10; ++n) {
    const CircuitStats st = circuit_stats(build_qft(n, true, true));
    CAPTURE(n);
    CHECK(st.depth == 2);
    CHECK(st.width == 2 * n);
    CHECK(st.gates == 1);
    CHECK(st.measurements == n);
    CHECK(st.barriers == 1);
  }
}

TEST_CASE("unboxed qft gate histogram: n + n(n-1)/2 + floor(n/2)") {
  const CircuitStats st = circuit_stats(build_qft(4, true, false));
  CHECK(st.gate_histogram.at("h") == 4);
  CHECK(st.gate_histogram.at("cp") == 6);
  CHECK(st.gate_histogram.at("swap") == 2);
}

TEST_CASE("qft unitary equals the dft matrix up to global phase") {
  for (int n = 1; n <= 6; ++n) {
    CAPTURE(n);
    const double dev =
        max_dev_up_to_phase(circuit_unitary(build_qft(n, true, false)),
                            dft_matrix(n));
    CHECK(dev < 1e-10);
  }
}

TEST_CASE("ghz stats match the reference rows for n=4..10") {
  for (int n = 4; n <= 10; ++n) {
    const CircuitStats st = circuit_stats(build_ghz(n));
    CAPTURE(n);
    CHECK(st.depth == n + 1);
    CHECK(st.width == 2 * n);
    CHECK(st.gates == n);
    CHECK(st.measurements == n);
    CHECK(st.barriers == 1);
  }
}

TEST_CASE("ghz-2 is the bell state") {
  const Statevector sv = simulate(build_ghz(2));
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(sv.amplitudes[0] - s) < 1e-12);
  CHECK(std::abs(sv.amplitudes[1]) == 0.0);
  CHECK(std::abs(sv.amplitudes[2]) == 0.0);
  CHECK(std::abs(sv.amplitudes[3] - s) < 1e-12);
}

TEST_CASE("ghz mass outside the two corner states is exactly zero") {
  for (int n : {3, 5, 8}) {
    const Statevector sv = simulate(build_ghz(n));
    const std::size_t last = sv.amplitudes.size() - 1;
    for (std::size_t i = 1; i < last; ++i) {
      REQUIRE(sv.amplitudes[i] == cd(0, 0));
    }
  }
}

TEST_CASE("w state: n nonzero one-hot amplitudes of squared modulus 1/n") {
  for (int n = 1; n <= 10; ++n) {
    const Statevector sv = simulate(build_w(n));
    CAPTURE(n);
    int nonzero = 0;
    for (std::size_t i = 0; i < sv.amplitudes.size(); ++i) {
      const double p = std::norm(sv.amplitudes[i]);
      if (p < 1e-24) continue;
      ++nonzero;
      CHECK(std::popcount(i) == 1);  // one-hot support only
      CHECK(std::abs(p - 1.0 / n) < 1e-12);
    }
    CHECK(nonzero == n);
  }
}

TEST_CASE("w builder details: W1 = |1>, W2 angle and amplitudes") {
  const Statevector w1 = simulate(build_w(1));
  CHECK(std::abs(w1.amplitudes[1] - cd(1, 0)) < 1e-12);

  const Circuit w2 = build_w(2);
  REQUIRE(w2.instructions.size() == 3);
  CHECK(w2.instructions[1].kind == GateKind::CRY);
  CHECK(w2.instructions[1].theta == doctest::Approx(M_PI / 2).epsilon(1e-12));
  const Statevector sv = simulate(w2);
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(std::abs(sv.amplitudes[1]) - s) < 1e-12);
  CHECK(std::abs(std::abs(sv.amplitudes[2]) - s) < 1e-12);
}

TEST_CASE("circuit_stats spot checks") {
  const CircuitStats ghz5 = circuit_stats(build_ghz(5));
  CHECK(ghz5.depth == 6);
  CHECK(ghz5.width == 10);
  CHECK(ghz5.gates == 5);

  Circuit empty;
  const CircuitStats est = circuit_stats(empty);
  CHECK(est.depth == 0);
  CHECK(est.gates == 0);

  const CircuitStats qft4 = circuit_stats(build_qft(4, true, true), true);
  CHECK(qft4.gates == 12);
  CHECK(qft4.measurements == 4);
}

TEST_CASE("builder bounds errors") {
  CHECK_THROWS_AS(build_qft(0, true, true), std::out_of_range);
  CHECK_THROWS_AS(build_qft(25, true, true), std::out_of_range);
  CHECK_THROWS_AS(build_ghz(1), std::out_of_range);
  CHECK_THROWS_AS(build_w(0), std::out_of_range);
}

TEST_CASE("circuit mutators validate indices") {
  Circuit c;
  c.n_qubits = 2;
  c.n_clbits = 1;
  CHECK_THROWS(c.add(GateKind::H, {2}));
  CHECK_THROWS(c.add(GateKind::CX, {0, 0}));
  CHECK_THROWS(c.measure(0, 1));
  CHECK_THROWS(c.add(GateKind::RZ, {0}, std::nan("")));
}

TEST_CASE("text serialization round-trips bit-exactly") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const Circuit c = random_circuit(rng);
    const std::string text = to_text(c);
    CHECK(to_text(from_text(text)) == text);
  }
  // composite round-trip
  const std::string boxed = to_text(build_qft(4, true, true));
  CHECK(to_text(from_text(boxed)) == boxed);
  CHECK_THROWS(from_text("no header here"));
}
