#pragma once

// Graphs shared by the unit, property and acceptance suites.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "graphint/graph.hpp"

namespace fixtures {

using graphint::Graph;

inline Graph from_text(const std::string& text) { return graphint::parse_graph(text); }

/// One vertex v with n loops e1..en.
inline Graph loops(int n) {
  std::string t = "vertex v\n";
  for (int i = 0; i < n; ++i) t += "v -> v\n";
  return from_text(t);
}

inline Graph two_cycle() { return from_text("v -> w\nw -> v\n"); }
inline Graph chain() { return from_text("u -> v\nv -> w\n"); }
/// u -> v -> w plus a second source x -> w, so n_w = 2.
inline Graph chain_with_source() { return from_text("u -> v\nv -> w\nx -> w\n"); }
inline Graph single_edge() { return from_text("v -> w\n"); }
inline Graph loop_with_sink_exit() { return from_text("v -> v\nv -> w\n"); }

/// Vertices v0..vn, w1..w_{n-1}; edges w1->v0, v1->v0, w_{k+1}->w_k, v_{k+1}->v_k.
inline Graph family(int n) {
  std::string t;
  for (int k = 0; k <= n; ++k) t += "vertex v" + std::to_string(k) + "\n";
  for (int k = 1; k < n; ++k) t += "vertex w" + std::to_string(k) + "\n";
  if (n >= 2) t += "w1 -> v0\n";
  t += "v1 -> v0\n";
  for (int k = 1; k + 1 < n; ++k) t += "w" + std::to_string(k + 1) + " -> w" + std::to_string(k) + "\n";
  for (int k = 1; k < n; ++k) t += "v" + std::to_string(k + 1) + " -> v" + std::to_string(k) + "\n";
  return from_text(t);
}

/// Seeded random multigraph with between `min_v` and `max_v` vertices and at
/// most `max_e` edges (loops and parallel edges allowed).
inline Graph random_graph(std::uint64_t seed, int max_v = 6, int max_e = 12, int min_v = 1) {
  std::mt19937_64 rng(seed);
  int nv = std::uniform_int_distribution<int>(min_v, max_v)(rng);
  int ne = std::uniform_int_distribution<int>(0, max_e)(rng);
  std::vector<std::string> names;
  for (int i = 0; i < nv; ++i) names.push_back("a" + std::to_string(i));
  std::vector<graphint::Edge> edges;
  std::uniform_int_distribution<int> pick(0, nv - 1);
  for (int i = 0; i < ne; ++i) {
    auto s = static_cast<graphint::VertexId>(pick(rng));
    auto d = static_cast<graphint::VertexId>(pick(rng));
    edges.push_back({"", s, d});
  }
  return Graph(names, edges);
}

/// Seeds of the five randomized members of the fixture set.
inline constexpr std::uint64_t kFixtureSeeds[] = {11, 23, 37, 41, 59};

inline Graph fixture_random(int i) { return random_graph(kFixtureSeeds[i], 6, 12, 3); }

struct Named {
  std::string name;
  Graph graph;
};

/// 1-vertex n-loops (n = 1..4), 2-cycle, chain, v->w, family graphs n = 2, 3,
/// and five seeded random graphs.
inline std::vector<Named> fixture_set() {
  std::vector<Named> out;
  for (int n = 1; n <= 4; ++n) out.push_back({"loops" + std::to_string(n), loops(n)});
  out.push_back({"two_cycle", two_cycle()});
  out.push_back({"chain", chain()});
  out.push_back({"single_edge", single_edge()});
  out.push_back({"family2", family(2)});
  out.push_back({"family3", family(3)});
  for (int i = 0; i < 5; ++i) out.push_back({"random" + std::to_string(i), fixture_random(i)});
  return out;
}

}  // namespace fixtures
