#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace qbench {

// Machine model for the transpiler: coupling graph, basis gate names and
// gate durations (the latter only feed the dynamical-decoupling pass).
struct HardwareTarget {
  int n_physical = 0;
  std::vector<std::pair<int, int>> edges;
  std::set<std::string> basis;
  std::map<std::string, double> durations_ns;

  std::vector<std::vector<int>> adjacency() const;
  bool has_edge(int a, int b) const;
  bool is_connected() const;
  int max_degree() const;
};

// Heavy-hex lattice generator. distance=4 reproduces the 127-qubit Eagle
// layout bundled as data/eagle127.json.
HardwareTarget heavy_hex_lattice(int distance);

// Loads the bundled representative 127-node heavy-hex edge list.
HardwareTarget eagle127();

HardwareTarget load_target(const std::string& path);
std::string target_to_json(const HardwareTarget& t);
void save_target(const HardwareTarget& t, const std::string& path);

}  // namespace qbench
