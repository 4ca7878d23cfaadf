#include "qbench/transpiler.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace qbench {

namespace {

constexpr double kPi = 3.14159265358979323846;

double wrap_angle(double x) {
  x = std::fmod(x + kPi, 2 * kPi);
  if (x <= 0) x += 2 * kPi;
  return x - kPi;
}

void inline_into(const Circuit& src, Circuit& dst,
                 const std::vector<int>* qubit_map) {
  auto phys = [&](int q) { return qubit_map ? (*qubit_map)[q] : q; };
  for (const auto& ins : src.instructions) {
    if (ins.kind == GateKind::Composite) {
      std::vector<int> inner(ins.qubits.size());
      for (size_t i = 0; i < ins.qubits.size(); ++i) inner[i] = phys(ins.qubits[i]);
      inline_into(*ins.body, dst, &inner);
    } else {
      Instruction copy = ins;
      for (auto& q : copy.qubits) q = phys(q);
      dst.instructions.push_back(std::move(copy));
    }
  }
}

Circuit inline_composites(const Circuit& c) {
  Circuit flat;
  flat.n_qubits = c.n_qubits;
  flat.n_clbits = c.n_clbits;
  inline_into(c, flat, nullptr);
  return flat;
}

// BFS-grown connected region of `n` physical qubits, rooted at the
// highest-degree node; neighbor order is shuffled by the seed.
std::vector<int> grow_region(const HardwareTarget& t, int n, std::uint64_t seed) {
  if (n > t.n_physical)
    throw std::runtime_error("circuit needs more qubits than the target has");
  auto adj = t.adjacency();
  int root = 0;
  for (int v = 1; v < t.n_physical; ++v)
    if (adj[v].size() > adj[root].size()) root = v;
  std::mt19937_64 rng(seed);
  std::vector<int> region;
  std::vector<char> seen(t.n_physical, 0);
  std::deque<int> queue{root};
  seen[root] = 1;
  while (!queue.empty() && static_cast<int>(region.size()) < n) {
    int v = queue.front();
    queue.pop_front();
    region.push_back(v);
    auto nbrs = adj[v];
    std::shuffle(nbrs.begin(), nbrs.end(), rng);
    for (int w : nbrs)
      if (!seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
  }
  if (static_cast<int>(region.size()) < n)
    throw std::runtime_error("target region too small or disconnected");
  return region;
}

// All-pairs shortest paths on the subgraph induced by `region`.
std::map<int, std::map<int, int>> region_distances(const HardwareTarget& t,
                                                   const std::vector<int>& region) {
  std::set<int> in_region(region.begin(), region.end());
  auto adj = t.adjacency();
  std::map<int, std::map<int, int>> dist;
  for (int s : region) {
    auto& d = dist[s];
    d[s] = 0;
    std::deque<int> q{s};
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (int w : adj[v]) {
        if (!in_region.count(w) || d.count(w)) continue;
        d[w] = d[v] + 1;
        q.push_back(w);
      }
    }
  }
  return dist;
}

struct RoutingState {
  std::vector<int> phys_of;  // logical -> physical
  std::map<int, int> log_at; // physical -> logical
};

// --- basis translation helpers ---------------------------------------------

bool same_up_to_phase(const Mat2& a, const Mat2& b, double tol) {
  // find the largest entry of b for the phase reference
  int best = 0;
  for (int i = 1; i < 4; ++i)
    if (std::abs(b[i]) > std::abs(b[best])) best = i;
  if (std::abs(b[best]) < tol) return false;
  const cd phase = a[best] / b[best];
  if (std::abs(std::abs(phase) - 1.0) > tol) return false;
  for (int i = 0; i < 4; ++i)
    if (std::abs(a[i] - phase * b[i]) > tol) return false;
  return true;
}

// Emits a 2x2 unitary over {rz, sx, x}, with peepholes for identity, X,
// SX and diagonal inputs.
void emit_1q_unitary(Circuit& out, int qubit, const Mat2& u) {
  const double tol = 1e-9;
  if (same_up_to_phase(u, mat_id(), tol)) return;
  if (same_up_to_phase(u, mat_x(), tol)) {
    out.add(GateKind::X, {qubit});
    return;
  }
  if (same_up_to_phase(u, mat_sx(), tol)) {
    out.add(GateKind::SX, {qubit});
    return;
  }
  if (std::abs(u[1]) < tol && std::abs(u[2]) < tol) {
    const double angle = wrap_angle(std::arg(u[3]) - std::arg(u[0]));
    if (std::abs(angle) > tol) out.add(GateKind::RZ, {qubit}, angle);
    return;
  }
  const ZxzxzAngles a = decompose_1q(u);
  auto emit_rz = [&](double angle) {
    angle = wrap_angle(angle);
    if (std::abs(angle) > tol) out.add(GateKind::RZ, {qubit}, angle);
  };
  emit_rz(a.gamma);
  out.add(GateKind::SX, {qubit});
  emit_rz(a.beta + kPi);
  out.add(GateKind::SX, {qubit});
  emit_rz(a.alpha + kPi);
}

Mat2 matrix_of_1q(const Instruction& ins) {
  switch (ins.kind) {
    case GateKind::H: return mat_h();
    case GateKind::X: return mat_x();
    case GateKind::SX: return mat_sx();
    case GateKind::RZ: return mat_rz(ins.theta);
    case GateKind::RY: return mat_ry(ins.theta);
    case GateKind::Id: return mat_id();
    default:
      throw std::invalid_argument(std::string("unknown source gate: ") +
                                  gate_name(ins.kind));
  }
}

}  // namespace

ZxzxzAngles decompose_1q(const Mat2& u) {
  // unitarity check: U U^dagger = I
  const cd a = u[0] * std::conj(u[0]) + u[1] * std::conj(u[1]);
  const cd b = u[0] * std::conj(u[2]) + u[1] * std::conj(u[3]);
  const cd d = u[2] * std::conj(u[2]) + u[3] * std::conj(u[3]);
  if (std::abs(a - 1.0) > 1e-10 || std::abs(d - 1.0) > 1e-10 ||
      std::abs(b) > 1e-10)
    throw std::invalid_argument("decompose_1q: input is not unitary");

  const double tol = 1e-12;
  const double theta = 2.0 * std::atan2(std::abs(u[2]), std::abs(u[0]));
  double phi = 0, lam = 0;
  if (std::abs(u[2]) < tol) {            // theta ~ 0
    lam = std::arg(u[3] / u[0]);
  } else if (std::abs(u[0]) < tol) {     // theta ~ pi
    phi = std::arg(-u[2] / u[1]);
  } else {
    phi = std::arg(u[2] / u[0]);
    lam = std::arg(-u[1] / u[0]);
  }
  return {wrap_angle(phi), wrap_angle(theta), wrap_angle(lam)};
}

Mat2 reconstruct_1q(const ZxzxzAngles& a) {
  Mat2 m = mat_rz(a.alpha + kPi);
  m = mul2(m, mat_sx());
  m = mul2(m, mat_rz(a.beta + kPi));
  m = mul2(m, mat_sx());
  m = mul2(m, mat_rz(a.gamma));
  return m;
}

std::vector<Instruction> cx_to_ecr(int control, int target) {
  // CX = (1q pre) . ECR . (1q post), derived from
  // ECR = (I(x)X - X(x)Y)/sqrt(2) = X_t . exp(-i pi/4 X_c Z_t).
  Circuit seq;
  seq.n_qubits = std::max(control, target) + 1;
  const Mat2 pre_c = mat_ry(-kPi / 2);
  const Mat2 pre_t = mat_h();
  const Mat2 post_c = mul2(mat_rz(kPi / 2), mat_ry(kPi / 2));
  const Mat2 post_t = mul2(mat_sx(), mul2(mat_h(), mat_x()));
  emit_1q_unitary(seq, control, pre_c);
  emit_1q_unitary(seq, target, pre_t);
  seq.add(GateKind::ECR, {control, target});
  emit_1q_unitary(seq, control, post_c);
  emit_1q_unitary(seq, target, post_t);
  return seq.instructions;
}

TranspiledCircuit transpile(const Circuit& c, const HardwareTarget& t,
                            const TranspileOptions& opts) {
  for (const char* g : {"ecr", "rz", "sx", "x"})
    if (!t.basis.count(g))
      throw std::runtime_error(std::string("target basis lacks ") + g);

  const Circuit flat = inline_composites(c);
  const int n = flat.n_qubits;

  // initial layout
  const std::vector<int> region = grow_region(t, n, opts.seed);
  auto dist = region_distances(t, region);
  std::set<int> in_region(region.begin(), region.end());

  RoutingState rs;
  rs.phys_of.resize(n);
  for (int l = 0; l < n; ++l) {
    rs.phys_of[l] = region[l];
    rs.log_at[region[l]] = l;
  }
  Layout layout;
  for (int l = 0; l < n; ++l) layout.initial[l] = region[l];

  // routing: greedy SWAP insertion with a 1-gate lookahead
  std::mt19937_64 rng(opts.seed ^ 0x9e3779b97f4a7c15ULL);
  Circuit routed;
  routed.n_qubits = t.n_physical;
  routed.n_clbits = flat.n_clbits;

  auto next_2q = [&](size_t from) -> const Instruction* {
    for (size_t i = from; i < flat.instructions.size(); ++i) {
      const auto& ins = flat.instructions[i];
      if (ins.qubits.size() == 2 && ins.kind != GateKind::Measure) return &ins;
    }
    return nullptr;
  };

  auto adj = t.adjacency();
  for (size_t i = 0; i < flat.instructions.size(); ++i) {
    const auto& ins = flat.instructions[i];
    if (ins.kind == GateKind::Barrier) {
      routed.barrier();
      continue;
    }
    if (ins.kind == GateKind::Measure) {
      routed.measure(rs.phys_of[ins.qubits[0]], ins.clbit);
      continue;
    }
    if (ins.qubits.size() == 1) {
      Instruction copy = ins;
      copy.qubits = {rs.phys_of[ins.qubits[0]]};
      routed.instructions.push_back(std::move(copy));
      continue;
    }
    const int la = ins.qubits[0], lb = ins.qubits[1];
    while (dist[rs.phys_of[la]][rs.phys_of[lb]] > 1) {
      const int pa = rs.phys_of[la], pb = rs.phys_of[lb];
      const int cur = dist[pa][pb];
      const Instruction* ahead = next_2q(i + 1);
      std::vector<std::pair<int, int>> best_swaps;
      double best_score = 1e18;
      for (int anchor : {pa, pb}) {
        for (int other : adj[anchor]) {
          if (!in_region.count(other)) continue;
          // distance after swapping occupants of (anchor, other)
          auto moved = [&](int p) {
            if (p == anchor) return other;
            if (p == other) return anchor;
            return p;
          };
          const int nd = dist[moved(pa)][moved(pb)];
          if (nd >= cur) continue;  // strict progress only
          double score = nd;
          if (ahead) {
            const int qa = rs.phys_of[ahead->qubits[0]];
            const int qb = rs.phys_of[ahead->qubits[1]];
            score += 0.5 * dist[moved(qa)][moved(qb)];
          }
          if (score < best_score - 1e-9) {
            best_score = score;
            best_swaps.assign(1, {anchor, other});
          } else if (score < best_score + 1e-9) {
            best_swaps.emplace_back(anchor, other);
          }
        }
      }
      if (best_swaps.empty())
        throw std::runtime_error("routing stalled on disconnected region");
      auto [p, q] = best_swaps[rng() % best_swaps.size()];
      routed.add(GateKind::Swap, {p, q});
      // update occupancy (both spots hold logicals in region routing)
      const auto it_p = rs.log_at.find(p);
      const auto it_q = rs.log_at.find(q);
      const int lp = it_p == rs.log_at.end() ? -1 : it_p->second;
      const int lq = it_q == rs.log_at.end() ? -1 : it_q->second;
      if (lp >= 0) rs.phys_of[lp] = q;
      if (lq >= 0) rs.phys_of[lq] = p;
      rs.log_at.erase(p);
      rs.log_at.erase(q);
      if (lp >= 0) rs.log_at[q] = lp;
      if (lq >= 0) rs.log_at[p] = lq;
    }
    Instruction copy = ins;
    copy.qubits = {rs.phys_of[la], rs.phys_of[lb]};
    routed.instructions.push_back(std::move(copy));
  }

  // final permutation: logical l ends on the physical spot initially
  // assigned to logical m
  std::map<int, int> initial_at;  // physical -> logical
  for (int l = 0; l < n; ++l) initial_at[layout.initial[l]] = l;
  for (int l = 0; l < n; ++l)
    layout.final_permutation[l] = initial_at.at(rs.phys_of[l]);

  // basis translation, with optional fusion of consecutive 1q runs
  Circuit out;
  out.n_qubits = t.n_physical;
  out.n_clbits = flat.n_clbits;
  std::map<int, Mat2> pending;  // physical qubit -> accumulated 1q unitary

  auto accumulate = [&](int q, const Mat2& m) {
    auto it = pending.find(q);
    if (it == pending.end())
      pending[q] = m;
    else
      it->second = mul2(m, it->second);
    if (opts.optimization == OneQubitOpt::None) {
      emit_1q_unitary(out, q, pending[q]);
      pending.erase(q);
    }
  };
  auto flush = [&](int q) {
    auto it = pending.find(q);
    if (it == pending.end()) return;
    emit_1q_unitary(out, q, it->second);
    pending.erase(it);
  };
  auto flush_all = [&] {
    while (!pending.empty()) flush(pending.begin()->first);
  };
  auto emit_cx = [&](int ctrl, int tgt) {
    for (const auto& g : cx_to_ecr(ctrl, tgt)) {
      if (g.qubits.size() == 1) {
        accumulate(g.qubits[0], matrix_of_1q(g));
      } else {
        flush(ctrl);
        flush(tgt);
        out.add(GateKind::ECR, {ctrl, tgt});
      }
    }
  };

  for (const auto& ins : routed.instructions) {
    switch (ins.kind) {
      case GateKind::Barrier:
        flush_all();
        out.barrier();
        break;
      case GateKind::Measure:
        flush(ins.qubits[0]);
        out.measure(ins.qubits[0], ins.clbit);
        break;
      case GateKind::CX:
        emit_cx(ins.qubits[0], ins.qubits[1]);
        break;
      case GateKind::Swap:
        emit_cx(ins.qubits[0], ins.qubits[1]);
        emit_cx(ins.qubits[1], ins.qubits[0]);
        emit_cx(ins.qubits[0], ins.qubits[1]);
        break;
      case GateKind::CP: {
        const int a = ins.qubits[0], b = ins.qubits[1];
        accumulate(a, mat_rz(ins.theta / 2));
        emit_cx(a, b);
        accumulate(b, mat_rz(-ins.theta / 2));
        emit_cx(a, b);
        accumulate(b, mat_rz(ins.theta / 2));
        break;
      }
      case GateKind::CRY: {
        const int ctrl = ins.qubits[0], tgt = ins.qubits[1];
        accumulate(tgt, mat_ry(ins.theta / 2));
        emit_cx(ctrl, tgt);
        accumulate(tgt, mat_ry(-ins.theta / 2));
        emit_cx(ctrl, tgt);
        break;
      }
      case GateKind::ECR:
        flush(ins.qubits[0]);
        flush(ins.qubits[1]);
        out.add(GateKind::ECR, ins.qubits);
        break;
      default:
        accumulate(ins.qubits[0], matrix_of_1q(ins));
    }
  }
  flush_all();

  TranspiledCircuit tc;
  tc.circuit = std::move(out);
  tc.layout = std::move(layout);
  tc.stats = circuit_stats(tc.circuit);
  if (opts.dd) tc = insert_dd(tc, t);
  return tc;
}

TranspiledCircuit insert_dd(const TranspiledCircuit& tc, const HardwareTarget& t) {
  const auto dur = [&](const std::string& name) {
    auto it = t.durations_ns.find(name);
    if (it == t.durations_ns.end())
      throw std::runtime_error("missing gate duration for " + name);
    return it->second;
  };
  const double x_dur = dur("x");

  // as-soon-as-possible schedule over physical qubits
  const Circuit& c = tc.circuit;
  std::vector<double> busy_until(c.n_qubits, 0.0);
  // per qubit: (end time of previous op, index of that op)
  struct Gap {
    size_t after_index;
    double start, span;
    int qubit;
  };
  std::vector<std::pair<double, long>> last_op(c.n_qubits, {0.0, -1});
  std::vector<Gap> gaps;
  std::vector<char> active(c.n_qubits, 0);

  for (size_t i = 0; i < c.instructions.size(); ++i) {
    const auto& ins = c.instructions[i];
    if (ins.kind == GateKind::Barrier) {
      double m = 0;
      if (ins.qubits.empty()) {
        for (double v : busy_until) m = std::max(m, v);
        std::fill(busy_until.begin(), busy_until.end(), m);
      } else {
        for (int q : ins.qubits) m = std::max(m, busy_until[q]);
        for (int q : ins.qubits) busy_until[q] = m;
      }
      continue;
    }
    double start = 0;
    for (int q : ins.qubits) start = std::max(start, busy_until[q]);
    const double d = dur(ins.kind == GateKind::Measure ? "measure"
                                                       : gate_name(ins.kind));
    for (int q : ins.qubits) {
      if (active[q] && start - last_op[q].first >= 2 * x_dur)
        gaps.push_back({size_t(last_op[q].second), last_op[q].first,
                        start - last_op[q].first, q});
      busy_until[q] = start + d;
      last_op[q] = {start + d, long(i)};
      active[q] = 1;
    }
  }

  if (gaps.empty()) return tc;

  // rebuild, appending the X-X pair right after the instruction that opens
  // each idle window (the schedule itself centers the pair in the window)
  std::map<size_t, std::vector<int>> insert_after;
  for (const auto& g : gaps) insert_after[g.after_index].push_back(g.qubit);

  TranspiledCircuit res;
  res.layout = tc.layout;
  res.circuit.n_qubits = c.n_qubits;
  res.circuit.n_clbits = c.n_clbits;
  for (size_t i = 0; i < c.instructions.size(); ++i) {
    res.circuit.instructions.push_back(c.instructions[i]);
    auto it = insert_after.find(i);
    if (it != insert_after.end())
      for (int q : it->second) {
        res.circuit.add(GateKind::X, {q});
        res.circuit.add(GateKind::X, {q});
      }
  }
  res.stats = circuit_stats(res.circuit);
  return res;
}

namespace {

Statevector simulate_on(const Circuit& gates, int n_qubits,
                        const std::vector<Mat2>& input_prep,
                        const std::map<int, int>* compact) {
  Statevector sv = zero_state(n_qubits);
  for (size_t q = 0; q < input_prep.size(); ++q)
    kernels::apply_1q(sv.amplitudes.data(), n_qubits, int(q), input_prep[q]);
  for (const auto& ins : gates.instructions) {
    if (ins.kind == GateKind::Measure || ins.kind == GateKind::Barrier) continue;
    Instruction copy = ins;
    if (compact)
      for (auto& q : copy.qubits) q = compact->at(q);
    apply_instruction(sv, copy);
  }
  return sv;
}

}  // namespace

EquivalenceReport verify_equivalence(const Circuit& a, const TranspiledCircuit& b,
                                     double tol) {
  const int n = a.n_qubits;
  if (b.layout.initial.size() != size_t(n))
    throw std::runtime_error("layout does not cover the logical qubits");

  // active physical qubits of b
  std::set<int> active;
  for (const auto& [l, p] : b.layout.initial) active.insert(p);
  for (const auto& ins : b.circuit.instructions)
    if (ins.kind != GateKind::Barrier)
      for (int q : ins.qubits) active.insert(q);
  const int m = int(active.size());
  if (m > 24)
    throw std::runtime_error("active-qubit reduction exceeds the simulator cap");
  std::map<int, int> compact;
  int next = 0;
  for (int p : active) compact[p] = next++;

  // logical l ends at the physical spot of logical final_permutation[l]
  std::vector<int> final_pos(n);
  for (int l = 0; l < n; ++l)
    final_pos[l] = compact.at(b.layout.initial.at(b.layout.final_permutation.at(l)));

  std::mt19937_64 rng(0xC0FFEEULL);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 9; ++trial) {
    std::vector<Mat2> prep_logical(n, mat_id());
    if (trial > 0)
      for (int q = 0; q < n; ++q) {
        const double theta = uni(rng) * kPi;
        const double phi = uni(rng) * 2 * kPi;
        prep_logical[q] = mul2(mat_rz(phi), mat_ry(theta));
      }
    const Statevector sv_a = simulate_on(a, n, prep_logical, nullptr);

    std::vector<Mat2> prep_phys(m, mat_id());
    for (int l = 0; l < n; ++l)
      prep_phys[compact.at(b.layout.initial.at(l))] = prep_logical[l];
    const Statevector sv_b = simulate_on(b.circuit, m, prep_phys, &compact);

    // embed sv_a at the final positions, |0> on every other active qubit
    std::vector<cd> expected(std::size_t(1) << m, cd(0, 0));
    for (std::uint64_t i = 0; i < (std::uint64_t(1) << n); ++i) {
      std::uint64_t j = 0;
      for (int l = 0; l < n; ++l)
        if (i >> l & 1) j |= std::uint64_t(1) << final_pos[l];
      expected[j] = sv_a.amplitudes[i];
    }

    // global-phase alignment against the largest expected amplitude
    std::size_t ref = 0;
    for (std::size_t i = 1; i < expected.size(); ++i)
      if (std::abs(expected[i]) > std::abs(expected[ref])) ref = i;
    cd phase(1, 0);
    if (std::abs(expected[ref]) > 1e-14) {
      phase = sv_b.amplitudes[ref] / expected[ref];
      const double mag = std::abs(phase);
      phase = mag > 1e-14 ? phase / mag : cd(1, 0);
    }
    for (std::size_t i = 0; i < expected.size(); ++i)
      worst = std::max(worst,
                       std::abs(sv_b.amplitudes[i] - phase * expected[i]));
  }
  return {worst < tol, worst};
}

std::string layout_to_json(const Layout& l) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json init = nlohmann::ordered_json::object();
  for (const auto& [k, v] : l.initial) init[std::to_string(k)] = v;
  nlohmann::ordered_json perm = nlohmann::ordered_json::object();
  for (const auto& [k, v] : l.final_permutation) perm[std::to_string(k)] = v;
  j["initial"] = init;
  j["final_permutation"] = perm;
  return j.dump(2) + "\n";
}

Layout layout_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  Layout l;
  for (const auto& [k, v] : j.at("initial").items())
    l.initial[std::stoi(k)] = v.get<int>();
  for (const auto& [k, v] : j.at("final_permutation").items())
    l.final_permutation[std::stoi(k)] = v.get<int>();
  return l;
}

}  // namespace qbench
