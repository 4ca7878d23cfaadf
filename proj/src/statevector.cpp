#include "qbench/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "json.hpp"

namespace qbench {

Statevector zero_state(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 24)
    throw std::out_of_range("simulator supports 1..24 qubits");
  Statevector sv;
  sv.n_qubits = n_qubits;
  sv.amplitudes.assign(std::size_t(1) << n_qubits, cd(0, 0));
  sv.amplitudes[0] = 1.0;
  return sv;
}

static Mat2 gate_matrix_1q(GateKind k, double theta) {
  switch (k) {
    case GateKind::H: return mat_h();
    case GateKind::X: return mat_x();
    case GateKind::SX: return mat_sx();
    case GateKind::RZ: return mat_rz(theta);
    case GateKind::RY: return mat_ry(theta);
    case GateKind::Id: return mat_id();
    default:
      throw std::invalid_argument(std::string("unsupported 1q gate: ") + gate_name(k));
  }
}

static Mat4 gate_matrix_2q(GateKind k, double theta) {
  switch (k) {
    case GateKind::CX: return mat_cx();
    case GateKind::CP: return mat_cp(theta);
    case GateKind::CRY: return mat_cry(theta);
    case GateKind::Swap: return mat_swap();
    case GateKind::ECR: return mat_ecr();
    default:
      throw std::invalid_argument(std::string("unsupported 2q gate: ") + gate_name(k));
  }
}

static void apply_mapped(Statevector& sv, const Instruction& ins,
                         const std::vector<int>* qubit_map) {
  auto phys = [&](int q) { return qubit_map ? (*qubit_map)[q] : q; };
  if (ins.kind == GateKind::Measure || ins.kind == GateKind::Barrier) return;
  if (ins.kind == GateKind::Composite) {
    std::vector<int> inner(ins.qubits.size());
    for (size_t i = 0; i < ins.qubits.size(); ++i) inner[i] = phys(ins.qubits[i]);
    for (const auto& sub : ins.body->instructions) {
      // remap body-local indices through the wrapper operands
      Instruction mapped = sub;
      for (auto& q : mapped.qubits) q = inner[q];
      apply_mapped(sv, mapped, nullptr);
    }
    return;
  }
  if (ins.qubits.size() == 1) {
    kernels::apply_1q(sv.amplitudes.data(), sv.n_qubits, phys(ins.qubits[0]),
                      gate_matrix_1q(ins.kind, ins.theta));
  } else {
    kernels::apply_2q(sv.amplitudes.data(), sv.n_qubits, phys(ins.qubits[0]),
                      phys(ins.qubits[1]), gate_matrix_2q(ins.kind, ins.theta));
  }
}

void apply_instruction(Statevector& sv, const Instruction& ins) {
  apply_mapped(sv, ins, nullptr);
}

Statevector simulate(const Circuit& c) {
  Statevector sv = zero_state(c.n_qubits);
  for (const auto& ins : c.instructions) apply_instruction(sv, ins);
  return sv;
}

std::string index_to_bitstring(std::uint64_t index, int n_bits) {
  std::string s(n_bits, '0');
  for (int i = 0; i < n_bits; ++i)
    if (index >> i & 1) s[n_bits - 1 - i] = '1';
  return s;
}

std::vector<double> probabilities(const Statevector& sv) {
  std::vector<double> p(sv.amplitudes.size());
  for (size_t i = 0; i < p.size(); ++i) p[i] = std::norm(sv.amplitudes[i]);
  return p;
}

CountsDistribution sample_counts(const Statevector& sv, long long shots,
                                 std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  auto probs = probabilities(sv);
  // cumulative over nonzero cells; binary search per shot
  std::vector<double> cum;
  std::vector<std::uint64_t> idx;
  cum.reserve(probs.size());
  double acc = 0;
  for (size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0) continue;
    acc += probs[i];
    cum.push_back(acc);
    idx.push_back(i);
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, acc);
  std::map<std::uint64_t, long long> raw;
  for (long long s = 0; s < shots; ++s) {
    const double u = uni(rng);
    const auto it = std::lower_bound(cum.begin(), cum.end(), u);
    raw[idx[it == cum.end() ? cum.size() - 1 : size_t(it - cum.begin())]]++;
  }
  CountsDistribution d;
  d.shots = shots;
  for (const auto& [i, n] : raw)
    d.entries[index_to_bitstring(i, sv.n_qubits)] = double(n);
  return d;
}

CountsDistribution ideal_distribution(Family family, int n) {
  const int lo = family == Family::GHZ ? 2 : 1;
  if (n < lo || n > 24)
    throw std::out_of_range("qubit count out of builder range");
  CountsDistribution d;
  d.shots = 0;
  switch (family) {
    case Family::QFT: {
      const double p = std::ldexp(1.0, -n);
      for (std::uint64_t i = 0; i < (std::uint64_t(1) << n); ++i)
        d.entries[index_to_bitstring(i, n)] = p;
      break;
    }
    case Family::GHZ:
      d.entries[std::string(n, '0')] = 0.5;
      d.entries[std::string(n, '1')] = 0.5;
      break;
    case Family::W:
      for (int i = 0; i < n; ++i)
        d.entries[index_to_bitstring(std::uint64_t(1) << i, n)] = 1.0 / n;
      break;
  }
  return d;
}

std::uint64_t memory_required(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 59)
    throw std::out_of_range("memory model covers 1..59 qubits");
  return std::uint64_t(16) << n_qubits;
}

std::string memory_gb_label(int n_qubits) {
  const std::uint64_t bytes = memory_required(n_qubits);
  const std::uint64_t gib = std::uint64_t(1) << 30;
  if (bytes % gib == 0) return std::to_string(bytes / gib) + " GB";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g GB", double(bytes) / double(gib));
  return buf;
}

std::string counts_to_json(const CountsDistribution& d) {
  nlohmann::ordered_json j;
  j["shots"] = d.shots;
  nlohmann::ordered_json counts = nlohmann::ordered_json::object();
  for (const auto& [k, v] : d.entries) {
    if (d.shots > 0)
      counts[k] = static_cast<long long>(std::llround(v));
    else
      counts[k] = v;
  }
  j["counts"] = counts;
  return j.dump(2) + "\n";
}

CountsDistribution counts_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  CountsDistribution d;
  d.shots = j.at("shots").get<long long>();
  for (const auto& [k, v] : j.at("counts").items())
    d.entries[k] = v.get<double>();
  return d;
}

std::string statevector_to_csv(const Statevector& sv) {
  std::string out = "index,re,im\n";
  char buf[96];
  for (size_t i = 0; i < sv.amplitudes.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", i,
                  sv.amplitudes[i].real(), sv.amplitudes[i].imag());
    out += buf;
  }
  return out;
}

}  // namespace qbench
