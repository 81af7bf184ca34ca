#pragma once

// The leveled diagram of the inclusions F_0 in F_1 in ... : graph nodes v@n
// for v in r(E^n), plus a frozen tail node w^(k) at every later level for
// each sink w reached by paths of length k.

#include <cstddef>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "graphint/graph.hpp"
#include "graphint/radical.hpp"

namespace graphint {

struct BratteliNode {
  VertexId vertex = 0;
  std::size_t level = 0;
  std::size_t path_length = 0;  // equals level for graph nodes, k for tails w^(k)
  bool tail = false;
  Integer block_size;  // m = #{mu in E^k : r(mu) = v}; the block is m x m

  Integer dimension() const { return block_size * block_size; }
};

struct BratteliEdge {
  std::size_t level = 0;  // edge runs from `level` to `level + 1`
  std::size_t from = 0;   // index into nodes[level]
  std::size_t to = 0;     // index into nodes[level + 1]
  Integer multiplicity;
};

struct BratteliDiagram {
  std::size_t levels = 0;
  std::vector<std::vector<BratteliNode>> nodes;  // nodes[n] for n = 0..levels
  std::vector<BratteliEdge> edges;

  std::string label(const Graph& g, const BratteliNode& n) const {
    if (n.tail) return g.vertex_name(n.vertex) + "^(" + std::to_string(n.path_length) + ")";
    return g.vertex_name(n.vertex) + "@" + std::to_string(n.level);
  }

  /// Total dimension of F_n.
  Integer dimension(std::size_t level) const {
    Integer d = 0;
    for (const auto& n : nodes.at(level)) d += n.dimension();
    return d;
  }

  /// Number of simple summands of F_n, the rank of K_0(F_n).
  std::size_t rank(std::size_t level) const { return nodes.at(level).size(); }

  std::size_t find(std::size_t level, VertexId v, bool tail, std::size_t path_length) const {
    const auto& ns = nodes.at(level);
    for (std::size_t i = 0; i < ns.size(); ++i)
      if (ns[i].vertex == v && ns[i].tail == tail && ns[i].path_length == path_length) return i;
    return ns.size();
  }
};

inline BratteliDiagram bratteli(const Graph& g, std::size_t levels) {
  if (levels < 1) throw std::invalid_argument("bratteli: levels must be >= 1");
  const std::size_t nv = g.vertex_count();
  BratteliDiagram d;
  d.levels = levels;
  d.nodes.resize(levels + 1);

  // paths[k][v] = #{mu in E^k : r(mu) = v}
  std::vector<std::vector<Integer>> paths(levels + 1, std::vector<Integer>(nv));
  for (std::size_t v = 0; v < nv; ++v) paths[0][v] = 1;
  for (std::size_t k = 0; k < levels; ++k)
    for (const auto& e : g.edges()) paths[k + 1][e.dst] += paths[k][e.src];

  for (std::size_t n = 0; n <= levels; ++n) {
    for (VertexId v = 0; v < nv; ++v)
      if (paths[n][v] != 0) d.nodes[n].push_back({v, n, n, false, paths[n][v]});
    for (std::size_t k = 0; k < n; ++k)
      for (VertexId w = 0; w < nv; ++w)
        if (g.is_sink(w) && paths[k][w] != 0) d.nodes[n].push_back({w, n, k, true, paths[k][w]});
  }

  for (std::size_t n = 0; n < levels; ++n)
    for (std::size_t i = 0; i < d.nodes[n].size(); ++i) {
      const auto& u = d.nodes[n][i];
      if (u.tail) {
        d.edges.push_back({n, i, d.find(n + 1, u.vertex, true, u.path_length), 1});
      } else if (g.is_sink(u.vertex)) {
        d.edges.push_back({n, i, d.find(n + 1, u.vertex, true, n), 1});
      } else {
        std::vector<Integer> mult(nv);
        for (EdgeId e : g.out_edges(u.vertex)) mult[g.dst(e)] += 1;
        for (VertexId w = 0; w < nv; ++w)
          if (mult[w] != 0) d.edges.push_back({n, i, d.find(n + 1, w, false, n + 1), mult[w]});
      }
    }
  return d;
}

namespace detail {
inline std::string dot_id(const BratteliNode& n) {
  return "n" + std::to_string(n.level) + "_" + std::to_string(n.vertex) + (n.tail ? "_t" + std::to_string(n.path_length) : "");
}
inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}
}  // namespace detail

/// DOT digraph ranked by level; graph nodes "v@n [dim m^2]", tails "v^(k)",
/// edge labels are multiplicities.
inline std::string to_dot(const Graph& g, const BratteliDiagram& d) {
  std::ostringstream os;
  os << "digraph bratteli {\n  rankdir=TB;\n  node [shape=box];\n";
  for (std::size_t n = 0; n <= d.levels; ++n) {
    os << "  { rank=same;";
    for (const auto& node : d.nodes[n]) os << " " << detail::dot_id(node) << ";";
    os << " }\n";
    for (const auto& node : d.nodes[n]) {
      std::string label = d.label(g, node);
      if (!node.tail) label += " [dim " + node.dimension().str() + "]";
      os << "  " << detail::dot_id(node) << " [label=" << detail::dot_quote(label) << "];\n";
    }
  }
  for (const auto& e : d.edges)
    os << "  " << detail::dot_id(d.nodes[e.level][e.from]) << " -> " << detail::dot_id(d.nodes[e.level + 1][e.to])
       << " [label=" << detail::dot_quote(e.multiplicity.str()) << "];\n";
  os << "}\n";
  return os.str();
}

/// DOT rendering of the graph itself, edges labelled by name.
inline std::string to_dot(const Graph& g) {
  std::ostringstream os;
  os << "digraph E {\n";
  for (const auto& v : g.vertex_names()) os << "  " << detail::dot_quote(v) << ";\n";
  for (const auto& e : g.edges())
    os << "  " << detail::dot_quote(g.vertex_name(e.src)) << " -> " << detail::dot_quote(g.vertex_name(e.dst))
       << " [label=" << detail::dot_quote(e.name) << "];\n";
  os << "}\n";
  return os.str();
}

inline nlohmann::ordered_json to_json(const Graph& g, const BratteliDiagram& d) {
  nlohmann::ordered_json j;
  j["levels"] = d.levels;
  auto levels = nlohmann::ordered_json::array();
  for (std::size_t n = 0; n <= d.levels; ++n) {
    auto nodes = nlohmann::ordered_json::array();
    for (const auto& node : d.nodes[n]) {
      nlohmann::ordered_json o;
      o["label"] = d.label(g, node);
      o["vertex"] = g.vertex_name(node.vertex);
      o["kind"] = node.tail ? "tail" : "graph";
      o["path_length"] = node.path_length;
      o["block_size"] = node.block_size.str();
      o["dimension"] = node.dimension().str();
      nodes.push_back(std::move(o));
    }
    levels.push_back(std::move(nodes));
  }
  j["nodes"] = std::move(levels);
  auto edges = nlohmann::ordered_json::array();
  for (const auto& e : d.edges) {
    nlohmann::ordered_json o;
    o["from"] = d.label(g, d.nodes[e.level][e.from]);
    o["to"] = d.label(g, d.nodes[e.level + 1][e.to]);
    o["level"] = e.level;
    o["multiplicity"] = e.multiplicity.str();
    edges.push_back(std::move(o));
  }
  j["edges"] = std::move(edges);
  return j;
}

}  // namespace graphint
