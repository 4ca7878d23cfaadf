#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qbench/circuit.hpp"
#include "qbench/gates.hpp"
#include "qbench/statevector.hpp"
#include "qbench/target.hpp"

namespace qbench {

struct Layout {
  std::map<int, int> initial;            // logical -> physical
  std::map<int, int> final_permutation;  // logical -> logical, routing-induced
};

struct TranspiledCircuit {
  Circuit circuit;  // over n_physical qubits, basis gates only
  Layout layout;
  CircuitStats stats;
};

enum class OneQubitOpt { None, Fuse };

struct TranspileOptions {
  std::uint64_t seed = 0;
  OneQubitOpt optimization = OneQubitOpt::Fuse;
  bool dd = false;
};

// Pipeline: inline composites -> initial layout (BFS-grown connected
// subgraph) -> greedy SWAP routing with 1-gate lookahead -> basis
// translation to {ecr, rz, sx, x} -> optional 1q fusion -> optional DD.
TranspiledCircuit transpile(const Circuit& c, const HardwareTarget& t,
                            const TranspileOptions& opts = {});

// ZXZXZ resynthesis. The reconstruction convention is
//   U ~ RZ(alpha+pi) . SX . RZ(beta+pi) . SX . RZ(gamma)
// up to global phase, so the identity maps to (0, 0, 0). Angles are
// normalized to (-pi, pi].
struct ZxzxzAngles {
  double alpha = 0, beta = 0, gamma = 0;
};
ZxzxzAngles decompose_1q(const Mat2& u);
Mat2 reconstruct_1q(const ZxzxzAngles& a);

// CX(control, target) over {ecr, rz, sx, x}; contains exactly one ECR.
std::vector<Instruction> cx_to_ecr(int control, int target);

// Inserts symmetric X-X pairs into idle windows of span >= 2*duration(x)
// on qubits that carry at least one gate. Ideal semantics unchanged.
TranspiledCircuit insert_dd(const TranspiledCircuit& tc, const HardwareTarget& t);

struct EquivalenceReport {
  bool equivalent = false;
  double max_deviation = 0.0;
};

// Compares final states on |0..0> plus 8 seeded random product inputs,
// modulo global phase, after un-permuting the transpiled circuit through
// its layout and reducing it to the active physical qubits.
EquivalenceReport verify_equivalence(const Circuit& a, const TranspiledCircuit& b,
                                     double tol);

std::string layout_to_json(const Layout& l);
Layout layout_from_json(const std::string& text);

}  // namespace qbench
