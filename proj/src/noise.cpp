#include "qbench/noise.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qbench {

NoiseModel noise_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  NoiseModel nm;
  nm.p1 = j.value("p1", nm.p1);
  nm.p2 = j.value("p2", nm.p2);
  nm.p_readout = j.value("p_readout", nm.p_readout);
  nm.seed = j.value("seed", nm.seed);
  return nm;
}

std::string noise_to_json(const NoiseModel& nm) {
  nlohmann::ordered_json j;
  j["p1"] = nm.p1;
  j["p2"] = nm.p2;
  j["p_readout"] = nm.p_readout;
  j["seed"] = nm.seed;
  return j.dump(2) + "\n";
}

NoiseModel load_noise(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open noise file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return noise_from_json(ss.str());
}

namespace {

struct FlatGate {
  GateKind kind;
  int q0 = -1, q1 = -1;  // compact indices; q1 < 0 for 1q
  double theta = 0.0;
  bool noisy = false;
};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void apply_flat(Statevector& sv, const FlatGate& g) {
  Instruction ins;
  ins.kind = g.kind;
  ins.theta = g.theta;
  ins.qubits = g.q1 < 0 ? std::vector<int>{g.q0} : std::vector<int>{g.q0, g.q1};
  apply_instruction(sv, ins);
}

void apply_pauli(Statevector& sv, int qubit, int p) {
  static const Mat2 paulis[3] = {mat_x(), mat_y(), mat_z()};
  kernels::apply_1q(sv.amplitudes.data(), sv.n_qubits, qubit, paulis[p]);
}

std::uint64_t sample_index(const Statevector& sv, double u) {
  double acc = 0;
  const auto& a = sv.amplitudes;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc += std::norm(a[i]);
    if (u < acc) return i;
  }
  return a.size() - 1;
}

}  // namespace

CountsDistribution noisy_sample(const TranspiledCircuit& tc, const NoiseModel& nm,
                                long long shots) {
  if (nm.p1 < 0 || nm.p1 > 1 || nm.p2 < 0 || nm.p2 > 1 || nm.p_readout < 0 ||
      nm.p_readout > 1)
    throw std::invalid_argument("noise probabilities must lie in [0, 1]");
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");

  // active-qubit reduction
  std::set<int> active;
  for (const auto& [l, p] : tc.layout.initial) active.insert(p);
  for (const auto& ins : tc.circuit.instructions)
    if (ins.kind != GateKind::Barrier)
      for (int q : ins.qubits) active.insert(q);
  if (active.size() > 20)
    throw std::runtime_error("active-qubit reduction exceeds the 20-qubit cap");
  std::map<int, int> compact;
  int m = 0;
  for (int p : active) compact[p] = m++;

  std::vector<FlatGate> gates;
  std::vector<std::pair<int, int>> measures;  // (compact qubit, clbit)
  for (const auto& ins : tc.circuit.instructions) {
    if (ins.kind == GateKind::Barrier) continue;
    if (ins.kind == GateKind::Measure) {
      measures.emplace_back(compact.at(ins.qubits[0]), ins.clbit);
      continue;
    }
    FlatGate g;
    g.kind = ins.kind;
    g.theta = ins.theta;
    g.q0 = compact.at(ins.qubits[0]);
    if (ins.qubits.size() == 2) g.q1 = compact.at(ins.qubits[1]);
    g.noisy = ins.kind != GateKind::RZ && ins.kind != GateKind::Id;
    gates.push_back(g);
  }
  if (measures.empty())
    throw std::runtime_error("transpiled circuit has no measurements to sample");
  const int n_clbits = tc.circuit.n_clbits;

  // ideal pass with checkpoints, reused by every error-free trajectory
  const std::size_t checkpoint_stride =
      std::max<std::size_t>(1, gates.size() / 16);
  std::vector<Statevector> checkpoints;  // state BEFORE gate k*stride
  Statevector ideal = zero_state(std::max(1, m));
  for (std::size_t k = 0; k < gates.size(); ++k) {
    if (k % checkpoint_stride == 0) checkpoints.push_back(ideal);
    apply_flat(ideal, gates[k]);
  }
  std::vector<double> ideal_cum(ideal.amplitudes.size());
  double acc = 0;
  for (std::size_t i = 0; i < ideal_cum.size(); ++i) {
    acc += std::norm(ideal.amplitudes[i]);
    ideal_cum[i] = acc;
  }

  // splitmix64 stream: hashing (base + shot*golden) keeps per-shot streams
  // disjoint across model seeds (a plain seed^shot collides as a multiset)
  const std::uint64_t seed_base = splitmix64(nm.seed);
  std::vector<std::uint64_t> results(shots);
#pragma omp parallel for schedule(dynamic, 16)
  for (long long s = 0; s < shots; ++s) {
    std::mt19937_64 rng(
        splitmix64(seed_base + 0x9e3779b97f4a7c15ULL * std::uint64_t(s)));
    std::uniform_real_distribution<double> uni(0.0, 1.0);

    // decide the injection pattern for this trajectory first
    std::vector<std::pair<std::size_t, int>> injections;  // (gate idx, pauli code)
    for (std::size_t k = 0; k < gates.size(); ++k) {
      const auto& g = gates[k];
      if (!g.noisy) continue;
      if (g.q1 < 0) {
        if (uni(rng) < nm.p1) injections.emplace_back(k, int(rng() % 3));
      } else {
        if (uni(rng) < nm.p2) injections.emplace_back(k, 1 + int(rng() % 15));
      }
    }

    std::uint64_t outcome;
    if (injections.empty()) {
      const double u = uni(rng) * acc;
      outcome = std::uint64_t(
          std::lower_bound(ideal_cum.begin(), ideal_cum.end(), u) -
          ideal_cum.begin());
      if (outcome >= ideal_cum.size()) outcome = ideal_cum.size() - 1;
    } else {
      const std::size_t first = injections.front().first;
      const std::size_t cp = first / checkpoint_stride;
      Statevector sv = checkpoints[cp];
      std::size_t inj = 0;
      for (std::size_t k = cp * checkpoint_stride; k < gates.size(); ++k) {
        apply_flat(sv, gates[k]);
        while (inj < injections.size() && injections[inj].first == k) {
          const int code = injections[inj].second;
          const auto& g = gates[k];
          if (g.q1 < 0) {
            apply_pauli(sv, g.q0, code);
          } else {
            const int pf = code / 4, ps = code % 4;
            if (pf) apply_pauli(sv, g.q0, pf - 1);
            if (ps) apply_pauli(sv, g.q1, ps - 1);
          }
          ++inj;
        }
      }
      outcome = sample_index(sv, uni(rng));
    }

    std::uint64_t bits = 0;
    for (const auto& [q, c] : measures) {
      int bit = int(outcome >> q & 1);
      if (nm.p_readout > 0 && uni(rng) < nm.p_readout) bit ^= 1;
      if (bit) bits |= std::uint64_t(1) << c;
    }
    results[s] = bits;
  }

  CountsDistribution d;
  d.shots = shots;
  std::map<std::uint64_t, long long> tally;
  for (auto b : results) tally[b]++;
  for (const auto& [b, cnt] : tally)
    d.entries[index_to_bitstring(b, n_clbits)] = double(cnt);
  return d;
}

}  // namespace qbench
