#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace qbench {

enum class GateKind {
  H, X, SX, RZ, RY, CX, CP, CRY, Swap, ECR, Id, Measure, Barrier, Composite
};

const char* gate_name(GateKind k);
GateKind gate_from_name(const std::string& name);
int gate_arity(GateKind k);
bool gate_has_angle(GateKind k);

struct Circuit;

struct Instruction {
  GateKind kind = GateKind::Id;
  std::vector<int> qubits;  // empty list on a barrier means "all qubits"
  int clbit = -1;           // measure only
  double theta = 0.0;
  std::string label;                    // composite only
  std::shared_ptr<const Circuit> body;  // composite only
};

// Gate-level IR shared by the builders, the simulator and the transpiler.
// Immutable by convention once built; the mutators below validate indices.
struct Circuit {
  int n_qubits = 1;
  int n_clbits = 0;
  std::vector<Instruction> instructions;

  void add(GateKind k, std::vector<int> qubits, double theta = 0.0);
  void measure(int qubit, int clbit);
  void barrier();
  void add_composite(std::string name, std::vector<int> qubits, Circuit body);
  void measure_all();  // barrier, then MEASURE i -> i for every qubit
};

struct CircuitStats {
  int depth = 0;
  int width = 0;
  int gates = 0;
  int measurements = 0;
  int barriers = 0;
  std::map<std::string, int> gate_histogram;
};

enum class Family { QFT, GHZ, W };
const char* family_name(Family f);
Family family_from_name(const std::string& name);

Circuit build_qft(int n, bool with_swaps = true, bool boxed = true);
Circuit build_ghz(int n);
Circuit build_w(int n);

// depth counts measurements but not barriers; width = qubits + clbits.
// With decompose=false a composite counts as a single gate.
CircuitStats circuit_stats(const Circuit& c, bool decompose = false);

// Line-oriented text format: header "qubits N clbits C", then one
// instruction per line. Round-trips bit-exactly (angles at full precision).
std::string to_text(const Circuit& c);
Circuit from_text(const std::string& text);

}  // namespace qbench
