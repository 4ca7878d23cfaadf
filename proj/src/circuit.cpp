#include "qbench/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qbench {

const char* gate_name(GateKind k) {
  switch (k) {
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::SX: return "sx";
    case GateKind::RZ: return "rz";
    case GateKind::RY: return "ry";
    case GateKind::CX: return "cx";
    case GateKind::CP: return "cp";
    case GateKind::CRY: return "cry";
    case GateKind::Swap: return "swap";
    case GateKind::ECR: return "ecr";
    case GateKind::Id: return "id";
    case GateKind::Measure: return "measure";
    case GateKind::Barrier: return "barrier";
    case GateKind::Composite: return "composite";
  }
  return "?";
}

GateKind gate_from_name(const std::string& name) {
  std::string s;
  for (char c : name) s.push_back(static_cast<char>(std::tolower(c)));
  if (s == "h") return GateKind::H;
  if (s == "x") return GateKind::X;
  if (s == "sx") return GateKind::SX;
  if (s == "rz") return GateKind::RZ;
  if (s == "ry") return GateKind::RY;
  if (s == "cx") return GateKind::CX;
  if (s == "cp") return GateKind::CP;
  if (s == "cry") return GateKind::CRY;
  if (s == "swap") return GateKind::Swap;
  if (s == "ecr") return GateKind::ECR;
  if (s == "id") return GateKind::Id;
  if (s == "measure") return GateKind::Measure;
  if (s == "barrier") return GateKind::Barrier;
  if (s == "composite") return GateKind::Composite;
  throw std::invalid_argument("unknown gate name: " + name);
}

int gate_arity(GateKind k) {
  switch (k) {
    case GateKind::CX:
    case GateKind::CP:
    case GateKind::CRY:
    case GateKind::Swap:
    case GateKind::ECR:
      return 2;
    case GateKind::Barrier:
    case GateKind::Composite:
      return -1;  // variable
    default:
      return 1;
  }
}

bool gate_has_angle(GateKind k) {
  return k == GateKind::RZ || k == GateKind::RY || k == GateKind::CP ||
         k == GateKind::CRY;
}

const char* family_name(Family f) {
  switch (f) {
    case Family::QFT: return "qft";
    case Family::GHZ: return "ghz";
    case Family::W: return "w";
  }
  return "?";
}

Family family_from_name(const std::string& name) {
  std::string s;
  for (char c : name) s.push_back(static_cast<char>(std::tolower(c)));
  if (s == "qft") return Family::QFT;
  if (s == "ghz") return Family::GHZ;
  if (s == "w") return Family::W;
  throw std::invalid_argument("unknown circuit family: " + name);
}

static void check_qubits(const Circuit& c, const std::vector<int>& qs) {
  std::set<int> seen;
  for (int q : qs) {
    if (q < 0 || q >= c.n_qubits)
      throw std::out_of_range("qubit index out of range: " + std::to_string(q));
    if (!seen.insert(q).second)
      throw std::invalid_argument("duplicate qubit operand: " + std::to_string(q));
  }
}

void Circuit::add(GateKind k, std::vector<int> qubits, double theta) {
  if (k == GateKind::Measure || k == GateKind::Composite)
    throw std::invalid_argument("use measure()/add_composite()");
  check_qubits(*this, qubits);
  const int arity = gate_arity(k);
  if (arity > 0 && static_cast<int>(qubits.size()) != arity)
    throw std::invalid_argument(std::string("wrong operand count for ") + gate_name(k));
  if (gate_has_angle(k) && !std::isfinite(theta))
    throw std::invalid_argument("gate angle must be finite");
  instructions.push_back({k, std::move(qubits), -1, theta, {}, nullptr});
}

void Circuit::measure(int qubit, int clbit) {
  check_qubits(*this, {qubit});
  if (clbit < 0 || clbit >= n_clbits)
    throw std::out_of_range("clbit index out of range: " + std::to_string(clbit));
  instructions.push_back({GateKind::Measure, {qubit}, clbit, 0.0, {}, nullptr});
}

void Circuit::barrier() {
  instructions.push_back({GateKind::Barrier, {}, -1, 0.0, {}, nullptr});
}

void Circuit::add_composite(std::string name, std::vector<int> qubits, Circuit body) {
  check_qubits(*this, qubits);
  if (body.n_qubits != static_cast<int>(qubits.size()))
    throw std::invalid_argument("composite body arity mismatch");
  Instruction ins;
  ins.kind = GateKind::Composite;
  ins.qubits = std::move(qubits);
  ins.label = std::move(name);
  ins.body = std::make_shared<const Circuit>(std::move(body));
  instructions.push_back(std::move(ins));
}

void Circuit::measure_all() {
  if (n_clbits < n_qubits) n_clbits = n_qubits;
  barrier();
  for (int q = 0; q < n_qubits; ++q) measure(q, q);
}

Circuit build_qft(int n, bool with_swaps, bool boxed) {
  if (n < 1 || n > 24)
    throw std::out_of_range("qft qubit count must be in [1, 24]");
  // Highest wire first so each controlled phase sees its control still in
  // the computational basis; qubit 0 is the least significant bit.
  Circuit body;
  body.n_qubits = n;
  for (int j = n - 1; j >= 0; --j) {
    body.add(GateKind::H, {j});
    for (int k = j - 1; k >= 0; --k)
      body.add(GateKind::CP, {j, k}, M_PI / std::pow(2.0, j - k));
  }
  if (with_swaps)
    for (int i = 0; i < n / 2; ++i)
      body.add(GateKind::Swap, {i, n - 1 - i});
  if (!boxed) return body;

  Circuit c;
  c.n_qubits = n;
  c.n_clbits = n;
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  c.add_composite("qft", all, std::move(body));
  c.barrier();
  for (int q = 0; q < n; ++q) c.measure(q, q);
  return c;
}

Circuit build_ghz(int n) {
  if (n < 2 || n > 24)
    throw std::out_of_range("ghz qubit count must be in [2, 24]");
  Circuit c;
  c.n_qubits = n;
  c.n_clbits = n;
  c.add(GateKind::H, {0});
  for (int i = 0; i + 1 < n; ++i) c.add(GateKind::CX, {i, i + 1});
  c.barrier();
  for (int q = 0; q < n; ++q) c.measure(q, q);
  return c;
}

Circuit build_w(int n) {
  if (n < 1 || n > 24)
    throw std::out_of_range("w qubit count must be in [1, 24]");
  Circuit c;
  c.n_qubits = n;
  c.add(GateKind::X, {0});
  for (int i = 0; i + 1 < n; ++i) {
    const double theta = 2.0 * std::acos(1.0 / std::sqrt(double(n - i)));
    c.add(GateKind::CRY, {i, i + 1}, theta);
    c.add(GateKind::CX, {i + 1, i});
  }
  return c;
}

static void count_gates(const Circuit& c, bool decompose, CircuitStats& st) {
  for (const auto& ins : c.instructions) {
    switch (ins.kind) {
      case GateKind::Measure:
        st.measurements++;
        break;
      case GateKind::Barrier:
        st.barriers++;
        break;
      case GateKind::Composite:
        if (decompose) {
          count_gates(*ins.body, decompose, st);
        } else {
          st.gates++;
          st.gate_histogram[ins.label.empty() ? "composite" : ins.label]++;
        }
        break;
      default:
        st.gates++;
        st.gate_histogram[gate_name(ins.kind)]++;
    }
  }
}

CircuitStats circuit_stats(const Circuit& c, bool decompose) {
  CircuitStats st;
  st.width = c.n_qubits + c.n_clbits;
  count_gates(c, decompose, st);

  // Longest dependency chain over qubit and clbit wires. Barriers
  // synchronize qubit wires without contributing a level.
  std::vector<int> qlevel(c.n_qubits, 0), clevel(c.n_clbits, 0);
  for (const auto& ins : c.instructions) {
    if (ins.kind == GateKind::Barrier) {
      int m = 0;
      if (ins.qubits.empty()) {
        for (int l : qlevel) m = std::max(m, l);
        std::fill(qlevel.begin(), qlevel.end(), m);
      } else {
        for (int q : ins.qubits) m = std::max(m, qlevel[q]);
        for (int q : ins.qubits) qlevel[q] = m;
      }
      continue;
    }
    int level = 0;
    for (int q : ins.qubits) level = std::max(level, qlevel[q]);
    if (ins.kind == GateKind::Measure) level = std::max(level, clevel[ins.clbit]);
    ++level;
    for (int q : ins.qubits) qlevel[q] = level;
    if (ins.kind == GateKind::Measure) clevel[ins.clbit] = level;
    st.depth = std::max(st.depth, level);
  }
  return st;
}

static std::string fmt_angle(double theta) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", theta);
  return buf;
}

static void emit_instructions(const Circuit& c, std::string& out, int indent) {
  const std::string pad(indent, ' ');
  for (const auto& ins : c.instructions) {
    out += pad;
    if (ins.kind == GateKind::Measure) {
      out += "MEASURE " + std::to_string(ins.qubits[0]) + " -> " +
             std::to_string(ins.clbit) + "\n";
    } else if (ins.kind == GateKind::Barrier) {
      out += "BARRIER\n";
    } else if (ins.kind == GateKind::Composite) {
      out += "COMPOSITE " + ins.label + " ";
      for (size_t i = 0; i < ins.qubits.size(); ++i)
        out += (i ? "," : "") + std::to_string(ins.qubits[i]);
      out += " {\n";
      emit_instructions(*ins.body, out, indent + 2);
      out += pad + "}\n";
    } else {
      std::string name = gate_name(ins.kind);
      for (char& ch : name) ch = static_cast<char>(std::toupper(ch));
      out += name + " ";
      for (size_t i = 0; i < ins.qubits.size(); ++i)
        out += (i ? "," : "") + std::to_string(ins.qubits[i]);
      if (gate_has_angle(ins.kind)) out += " " + fmt_angle(ins.theta);
      out += "\n";
    }
  }
}

std::string to_text(const Circuit& c) {
  std::string out = "qubits " + std::to_string(c.n_qubits) + " clbits " +
                    std::to_string(c.n_clbits) + "\n";
  emit_instructions(c, out, 0);
  return out;
}

static std::vector<int> parse_qubit_list(const std::string& tok) {
  std::vector<int> qs;
  std::stringstream ss(tok);
  std::string item;
  while (std::getline(ss, item, ','))
    qs.push_back(std::stoi(item));
  return qs;
}

static void parse_instructions(std::istream& in, Circuit& c) {
  std::string line;
  while (std::getline(in, line)) {
    std::stringstream ls(line);
    std::string op;
    if (!(ls >> op)) continue;
    if (op == "}") return;
    if (op == "BARRIER") {
      c.barrier();
    } else if (op == "MEASURE") {
      int q, cl;
      std::string arrow;
      if (!(ls >> q >> arrow >> cl) || arrow != "->")
        throw std::invalid_argument("malformed MEASURE line: " + line);
      c.measure(q, cl);
    } else if (op == "COMPOSITE") {
      std::string name, qtok, brace;
      if (!(ls >> name >> qtok >> brace) || brace != "{")
        throw std::invalid_argument("malformed COMPOSITE line: " + line);
      auto qs = parse_qubit_list(qtok);
      Circuit body;
      body.n_qubits = static_cast<int>(qs.size());
      parse_instructions(in, body);
      c.add_composite(name, qs, std::move(body));
    } else {
      GateKind k = gate_from_name(op);
      std::string qtok;
      if (!(ls >> qtok))
        throw std::invalid_argument("missing operands: " + line);
      auto qs = parse_qubit_list(qtok);
      double theta = 0.0;
      if (gate_has_angle(k)) {
        if (!(ls >> theta))
          throw std::invalid_argument("missing angle: " + line);
      }
      c.add(k, qs, theta);
    }
  }
}

Circuit from_text(const std::string& text) {
  std::stringstream in(text);
  std::string kw1, kw2;
  int nq, nc;
  if (!(in >> kw1 >> nq >> kw2 >> nc) || kw1 != "qubits" || kw2 != "clbits")
    throw std::invalid_argument("missing circuit header");
  std::string rest;
  std::getline(in, rest);
  Circuit c;
  c.n_qubits = nq;
  c.n_clbits = nc;
  parse_instructions(in, c);
  return c;
}

}  // namespace qbench
