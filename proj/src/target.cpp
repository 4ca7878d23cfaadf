#include "qbench/target.hpp"

#include <cstdlib>
#include <deque>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qbench {

std::vector<std::vector<int>> HardwareTarget::adjacency() const {
  std::vector<std::vector<int>> adj(n_physical);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

bool HardwareTarget::has_edge(int a, int b) const {
  for (auto [x, y] : edges)
    if ((x == a && y == b) || (x == b && y == a)) return true;
  return false;
}

bool HardwareTarget::is_connected() const {
  if (n_physical == 0) return false;
  auto adj = adjacency();
  std::vector<char> seen(n_physical, 0);
  std::deque<int> q{0};
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        q.push_back(w);
      }
  }
  return reached == n_physical;
}

int HardwareTarget::max_degree() const {
  std::vector<int> deg(n_physical, 0);
  for (auto [a, b] : edges) {
    deg[a]++;
    deg[b]++;
  }
  int m = 0;
  for (int d : deg) m = std::max(m, d);
  return m;
}

static std::map<std::string, double> default_durations() {
  return {{"rz", 0.0}, {"sx", 35.0}, {"x", 35.0}, {"id", 35.0},
          {"ecr", 500.0}, {"measure", 800.0}};
}

static std::set<std::string> default_basis() {
  return {"ecr", "rz", "sx", "x", "id"};
}

HardwareTarget heavy_hex_lattice(int distance) {
  if (distance < 1) throw std::out_of_range("heavy-hex distance must be >= 1");
  const int d = distance;
  const int rows = 2 * d - 1;
  const int cols = 4 * d - 1;  // columns 0 .. 4d-2

  // Which columns exist per long row: the top row sheds the column its
  // bridge never reaches, the bottom row likewise on the opposite end.
  auto row_cols = [&](int r) {
    std::pair<int, int> range{0, cols - 1};
    if (rows > 1 && r == 0) range.second = cols - 2;
    if (rows > 1 && r == rows - 1) {
      const int last_bridge = rows - 2;
      if (last_bridge % 2 == 1)
        range.first = 1;
      else
        range.second = cols - 2;
    }
    return range;
  };

  HardwareTarget t;
  t.basis = default_basis();
  t.durations_ns = default_durations();

  std::vector<std::vector<int>> id_at(rows, std::vector<int>(cols, -1));
  int next = 0;
  for (int r = 0; r < rows; ++r) {
    auto [c0, c1] = row_cols(r);
    for (int c = c0; c <= c1; ++c) id_at[r][c] = next++;
    for (int c = c0; c < c1; ++c)
      t.edges.emplace_back(id_at[r][c], id_at[r][c + 1]);
    if (r + 1 < rows) {
      const int off = (r % 2 == 0) ? 0 : 2;
      for (int k = 0; k < d; ++k) {
        const int c = off + 4 * k;
        const int bridge = next++;
        t.edges.emplace_back(id_at[r][c], bridge);
        // lower endpoint resolved after the next row is numbered
        t.edges.emplace_back(bridge, -(r + 1) * cols - c - 1);  // placeholder
      }
    }
  }
  t.n_physical = next;
  for (auto& [a, b] : t.edges) {
    if (b < 0) {
      const int enc = -b - 1;
      b = id_at[enc / cols][enc % cols];
      if (b < 0) throw std::logic_error("heavy-hex bridge landed off-row");
    }
  }
  return t;
}

static std::string data_dir() {
  if (const char* env = std::getenv("QBENCH_DATA_DIR")) return env;
#ifdef QBENCH_DATA_DIR
  return QBENCH_DATA_DIR;
#else
  return "data";
#endif
}

HardwareTarget eagle127() {
  HardwareTarget t = load_target(data_dir() + "/eagle127.json");
  if (t.n_physical != 127)
    throw std::runtime_error("bundled eagle127 map is malformed");
  return t;
}

std::string target_to_json(const HardwareTarget& t) {
  nlohmann::ordered_json j;
  j["n"] = t.n_physical;
  auto edges = nlohmann::ordered_json::array();
  for (auto [a, b] : t.edges) edges.push_back({a, b});
  j["edges"] = edges;
  j["basis"] = t.basis;
  j["durations_ns"] = t.durations_ns;
  return j.dump(2) + "\n";
}

HardwareTarget load_target(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open target file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(ss.str());
  } catch (const std::exception& e) {
    throw std::runtime_error("malformed target file " + path + ": " + e.what());
  }
  HardwareTarget t;
  t.n_physical = j.at("n").get<int>();
  for (const auto& e : j.at("edges")) {
    int a = e.at(0).get<int>(), b = e.at(1).get<int>();
    if (a == b || a < 0 || b < 0 || a >= t.n_physical || b >= t.n_physical)
      throw std::runtime_error("malformed edge in target file " + path);
    t.edges.emplace_back(a, b);
  }
  if (j.contains("basis"))
    for (const auto& g : j.at("basis")) t.basis.insert(g.get<std::string>());
  else
    t.basis = default_basis();
  if (j.contains("durations_ns"))
    for (const auto& [k, v] : j.at("durations_ns").items())
      t.durations_ns[k] = v.get<double>();
  else
    t.durations_ns = default_durations();
  return t;
}

void save_target(const HardwareTarget& t, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write target file: " + path);
  out << target_to_json(t);
}

}  // namespace qbench
