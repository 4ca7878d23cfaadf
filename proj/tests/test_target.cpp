#include <algorithm>
#include <cstdio>
#include <set>

#include "doctest.h"
#include "qbench/target.hpp"

using namespace qbench;

TEST_CASE("bundled 127-node heavy-hex target") {
  const HardwareTarget t = eagle127();
  CHECK(t.n_physical == 127);
  CHECK(t.edges.size() == 144);
  CHECK(t.max_degree() == 3);
  CHECK(t.is_connected());
  CHECK(t.basis.count("ecr") == 1);
  CHECK(t.basis.count("rz") == 1);
  CHECK(t.basis.count("sx") == 1);
  CHECK(t.basis.count("x") == 1);
}

TEST_CASE("distance-4 generator reproduces the bundled edge list") {
  const HardwareTarget gen = heavy_hex_lattice(4);
  const HardwareTarget ref = eagle127();
  CHECK(gen.n_physical == ref.n_physical);
  auto canon = [](const HardwareTarget& t) {
    std::set<std::pair<int, int>> s;
    for (auto [a, b] : t.edges) s.insert({std::min(a, b), std::max(a, b)});
    return s;
  };
  CHECK(canon(gen) == canon(ref));
}

TEST_CASE("heavy-hex generator invariants for small distances") {
  for (int d = 1; d <= 5; ++d) {
    const HardwareTarget t = heavy_hex_lattice(d);
    CAPTURE(d);
    CHECK(t.n_physical > 0);
    CHECK(t.is_connected());
    CHECK(t.max_degree() <= 3);
    // sparse: a heavy-hex graph never reaches 1.5 edges per node
    CHECK(double(t.edges.size()) < 1.5 * t.n_physical);
    std::set<std::pair<int, int>> seen;
    for (auto [a, b] : t.edges) {
      CHECK(a != b);
      CHECK(a >= 0);
      CHECK(b < t.n_physical);
      CHECK(seen.insert({std::min(a, b), std::max(a, b)}).second);
    }
  }
  CHECK_THROWS(heavy_hex_lattice(0));
}

TEST_CASE("adjacency helpers agree with the edge list") {
  HardwareTarget t;
  t.n_physical = 4;
  t.edges = {{0, 1}, {1, 2}, {2, 3}};
  CHECK(t.has_edge(0, 1));
  CHECK(t.has_edge(1, 0));
  CHECK_FALSE(t.has_edge(0, 2));
  CHECK(t.is_connected());
  CHECK(t.max_degree() == 2);
  const auto adj = t.adjacency();
  REQUIRE(adj.size() == 4);
  CHECK(adj[1].size() == 2);

  t.edges.pop_back();
  CHECK_FALSE(t.is_connected());
}

TEST_CASE("target json round-trips through a file") {
  const HardwareTarget t = heavy_hex_lattice(2);
  const std::string path = "roundtrip_target.json";
  save_target(t, path);
  const HardwareTarget back = load_target(path);
  std::remove(path.c_str());
  CHECK(back.n_physical == t.n_physical);
  CHECK(back.edges == t.edges);
  CHECK(back.basis == t.basis);
  CHECK(back.durations_ns == t.durations_ns);
}

TEST_CASE("loading a missing or malformed target fails") {
  CHECK_THROWS(load_target("no_such_file_here.json"));
  const std::string path = "malformed_target.json";
  {
    FILE* f = std::fopen(path.c_str(), "w");
    REQUIRE(f != nullptr);
    std::fputs("{\"edges\": [[0, 1]]}", f);  // missing qubit count
    std::fclose(f);
  }
  CHECK_THROWS(load_target(path));
  std::remove(path.c_str());
}

TEST_CASE("default durations cover the basis plus measurement") {
  const HardwareTarget t = eagle127();
  CHECK(t.durations_ns.at("rz") == 0);
  CHECK(t.durations_ns.at("sx") > 0);
  CHECK(t.durations_ns.at("x") > 0);
  CHECK(t.durations_ns.at("ecr") > t.durations_ns.at("x"));
  CHECK(t.durations_ns.at("measure") > 0);
}
