#pragma once

// Combinatorial decision procedures on a graph: interaction powers, the
// C*-dynamical test, simple loops, conditions (L) and (K), the lattice of
// hereditary saturated sets and the simplicity / pure infiniteness verdicts.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "graphint/errors.hpp"
#include "graphint/graph.hpp"
#include "graphint/rational_matrix.hpp"

namespace graphint {

using VertexSet = std::vector<VertexId>;  // sorted, duplicate-free
using Mask = std::vector<char>;

namespace detail {

inline Mask mask_of(const Graph& g, const VertexSet& vs) {
  Mask m(g.vertex_count(), 0);
  for (VertexId v : vs) {
    if (v >= g.vertex_count()) throw std::out_of_range("unknown vertex id " + std::to_string(v));
    m[v] = 1;
  }
  return m;
}

inline VertexSet set_of(const Mask& m) {
  VertexSet out;
  for (std::size_t v = 0; v < m.size(); ++v)
    if (m[v]) out.push_back(static_cast<VertexId>(v));
  return out;
}

/// Vertices reachable by exactly one more edge from `from`.
inline Mask step_forward(const Graph& g, const Mask& from) {
  Mask to(g.vertex_count(), 0);
  for (const auto& e : g.edges())
    if (from[e.src]) to[e.dst] = 1;
  return to;
}

}  // namespace detail

// ---------------------------------------------------------------- powers

struct PowerOracles {
  std::vector<unsigned> stochastic;      // n with P^n partially stochastic
  std::vector<unsigned> path_condition;  // n with no (mu in E^n, nu in E^k, k<n, r(mu)=r(nu), s(nu) a source)
};

/// Membership of n via the path condition, by boolean reachability: `any`
/// marks ends of length-n paths, `seen_src` ends of shorter paths from sources.
inline bool path_condition_holds(const Graph& g, unsigned n) {
  const std::size_t nv = g.vertex_count();
  Mask any(nv, 1), src(nv, 0);
  for (VertexId v : g.sources()) src[v] = 1;
  Mask seen_src = src;  // union over k < current length
  for (unsigned k = 1; k <= n; ++k) {
    any = detail::step_forward(g, any);
    if (k == n) break;
    src = detail::step_forward(g, src);
    for (std::size_t w = 0; w < nv; ++w) seen_src[w] |= src[w];
  }
  for (std::size_t w = 0; w < nv; ++w)
    if (any[w] && seen_src[w]) return false;
  return true;
}

inline PowerOracles interaction_power_oracles(const Graph& g, unsigned n_max) {
  if (n_max < 1) throw std::invalid_argument("interaction_powers: n_max must be >= 1");
  PowerOracles out;
  const RationalMatrix p = transition_matrix(g);
  RationalMatrix pn = RationalMatrix::identity(g.vertex_count());
  for (unsigned n = 1; n <= n_max; ++n) {
    pn = pn * p;
    if (is_partially_stochastic(pn)) out.stochastic.push_back(n);
    if (path_condition_holds(g, n)) out.path_condition.push_back(n);
  }
  return out;
}

/// {n <= n_max : (V^n, H^n) is an interaction}. Both oracles must agree.
inline std::vector<unsigned> interaction_powers(const Graph& g, unsigned n_max) {
  auto o = interaction_power_oracles(g, n_max);
  if (o.stochastic != o.path_condition)
    throw OracleMismatch("interaction_powers: stochastic-matrix and path-condition oracles disagree");
  return o.stochastic;
}

/// Paths of equal length and equal range either all start at sources or none do.
/// Iterates (S_n, N_n) = (ends of length-n paths from sources, from non-sources)
/// until the pair repeats.
inline bool is_cstar_dynamical(const Graph& g) {
  const std::size_t nv = g.vertex_count();
  Mask s(nv, 0), ns(nv, 0);
  for (std::size_t v = 0; v < nv; ++v) (g.is_source(static_cast<VertexId>(v)) ? s : ns)[v] = 1;
  std::set<std::pair<Mask, Mask>> seen;
  while (seen.emplace(s, ns).second) {
    for (std::size_t v = 0; v < nv; ++v)
      if (s[v] && ns[v]) return false;
    s = detail::step_forward(g, s);
    ns = detail::step_forward(g, ns);
  }
  return true;
}

/// r is injective on edges.
inline bool is_H_multiplicative(const Graph& g) {
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (g.in_degree(static_cast<VertexId>(v)) > 1) return false;
  return true;
}

// ---------------------------------------------------------------- loops

/// Vertex-simple cycles, each once, rotated to the least edge-id sequence and
/// sorted by (base vertex, length, edge sequence).
inline std::vector<Path> simple_loops(const Graph& g) {
  std::vector<Path> loops;
  const std::size_t nv = g.vertex_count();
  std::vector<char> on_path(nv, 0);
  std::vector<EdgeId> stack;
  for (VertexId start = 0; start < nv; ++start) {
    // DFS over vertices > start; each cycle is found from its least vertex only.
    auto dfs = [&](auto&& self, VertexId v) -> void {
      for (EdgeId e : g.out_edges(v)) {
        VertexId w = g.dst(e);
        if (w == start) {
          stack.push_back(e);
          loops.push_back(Path::of_edges(g, stack));
          stack.pop_back();
        } else if (w > start && !on_path[w]) {
          on_path[w] = 1;
          stack.push_back(e);
          self(self, w);
          stack.pop_back();
          on_path[w] = 0;
        }
      }
    };
    dfs(dfs, start);
  }
  for (auto& p : loops) {
    auto least = std::min_element(p.edges.begin(), p.edges.end());
    std::rotate(p.edges.begin(), least, p.edges.end());
    p.start = g.src(p.edges.front());
  }
  std::sort(loops.begin(), loops.end(), [](const Path& a, const Path& b) {
    if (a.start != b.start) return a.start < b.start;
    if (a.length() != b.length()) return a.length() < b.length();
    return a.edges < b.edges;
  });
  return loops;
}

/// An exit of a loop: an edge leaving a loop vertex that is not a loop edge.
inline std::optional<EdgeId> loop_exit(const Graph& g, const Path& loop) {
  for (EdgeId le : loop.edges)
    for (EdgeId e : g.out_edges(g.src(le)))
      if (std::find(loop.edges.begin(), loop.edges.end(), e) == loop.edges.end()) return e;
  return std::nullopt;
}

inline std::vector<Path> exit_free_loops(const Graph& g) {
  std::vector<Path> out;
  for (auto& l : simple_loops(g))
    if (!loop_exit(g, l)) out.push_back(std::move(l));
  return out;
}

/// Every loop has an exit.
inline bool condition_L(const Graph& g) { return exit_free_loops(g).empty(); }

// ---------------------------------------------------------------- hereditary saturated sets

/// Least superset of `seed` that is hereditary (s(e) in H => r(e) in H) and
/// saturated (a non-sink whose edges all land in H is in H).
inline VertexSet hereditary_saturated_closure(const Graph& g, const VertexSet& seed) {
  Mask in = detail::mask_of(g, seed);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& e : g.edges())
      if (in[e.src] && !in[e.dst]) in[e.dst] = 1, changed = true;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      if (in[v] || g.is_sink(static_cast<VertexId>(v))) continue;
      auto out = g.out_edges(static_cast<VertexId>(v));
      if (std::all_of(out.begin(), out.end(), [&](EdgeId e) { return in[g.dst(e)] != 0; }))
        in[v] = 1, changed = true;
    }
  }
  return detail::set_of(in);
}

inline VertexSet hereditary_saturated_closure(const Graph& g, const std::vector<std::string>& seed) {
  VertexSet ids;
  for (const auto& name : seed) ids.push_back(g.vertex(name));
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return hereditary_saturated_closure(g, ids);
}

inline bool is_hereditary_saturated(const Graph& g, const VertexSet& vs) {
  return hereditary_saturated_closure(g, vs) == vs;
}

/// Every hereditary saturated subset, sorted by size then lexicographically.
/// Grown breadth-first from the empty set by adding one vertex and closing;
/// every member T arises this way because closing T's elements one at a time
/// never leaves T.
inline std::vector<VertexSet> all_hereditary_saturated(const Graph& g, std::size_t vertex_bound = 20) {
  const std::size_t nv = g.vertex_count();
  if (nv > vertex_bound || nv > 63)
    throw BoundExceeded("all_hereditary_saturated: " + std::to_string(nv) + " vertices exceeds bound " +
                        std::to_string(std::min<std::size_t>(vertex_bound, 63)));
  auto to_bits = [](const VertexSet& s) {
    std::uint64_t b = 0;
    for (VertexId v : s) b |= std::uint64_t{1} << v;
    return b;
  };
  auto from_bits = [nv](std::uint64_t b) {
    VertexSet s;
    for (std::size_t v = 0; v < nv; ++v)
      if (b >> v & 1) s.push_back(static_cast<VertexId>(v));
    return s;
  };
  std::set<std::uint64_t> found{0};
  std::vector<std::uint64_t> frontier{0};
  while (!frontier.empty()) {
    std::vector<std::uint64_t> next;
    for (std::uint64_t b : frontier)
      for (std::size_t v = 0; v < nv; ++v) {
        if (b >> v & 1) continue;
        auto seed = from_bits(b | std::uint64_t{1} << v);
        std::uint64_t c = to_bits(hereditary_saturated_closure(g, seed));
        if (found.insert(c).second) next.push_back(c);
      }
    frontier = std::move(next);
  }
  std::vector<VertexSet> out;
  for (auto b : found) out.push_back(from_bits(b));
  std::sort(out.begin(), out.end(), [](const VertexSet& a, const VertexSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

/// Full subgraph on the vertices outside `removed`.
inline Graph subgraph_without(const Graph& g, const VertexSet& removed) {
  Mask gone = detail::mask_of(g, removed);
  std::vector<std::string> names;
  std::vector<VertexId> new_id(g.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (!gone[v]) new_id[v] = static_cast<VertexId>(names.size()), names.push_back(g.vertex_name(static_cast<VertexId>(v)));
  std::vector<Edge> edges;
  for (const auto& e : g.edges())
    if (!gone[e.src] && !gone[e.dst]) edges.push_back({e.name, new_id[e.src], new_id[e.dst]});
  return Graph(std::move(names), std::move(edges));
}

/// Number of first-return paths at v (closed paths from v that do not pass
/// through v in between), counted up to `max_len` and capped at `cap`.
inline unsigned return_path_count(const Graph& g, VertexId v, std::size_t max_len, unsigned cap = 2) {
  std::vector<unsigned> walks(g.vertex_count(), 0);
  walks[v] = 1;
  unsigned returns = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<unsigned> next(g.vertex_count(), 0);
    for (const auto& e : g.edges()) {
      if (!walks[e.src]) continue;
      if (e.src == v && len > 1) continue;
      next[e.dst] = std::min(cap, next[e.dst] + walks[e.src]);
    }
    returns = std::min(cap, returns + next[v]);
    if (returns >= cap) return returns;
    next[v] = 0;
    walks = std::move(next);
  }
  return returns;
}

struct ConditionKOracles {
  bool hereditary_saturated;  // (L) on the complement of every hereditary saturated set
  bool return_paths;          // every vertex on a loop has >= 2 first-return paths
};

/// Counting return paths up to length 3|E^0| suffices. Two distinct simple
/// cycles through v are both that short. Otherwise some return path repeats a
/// vertex, so a simple cycle D avoids v while meeting a return path at x; then
/// v->x->v along simple paths and the same route with one lap of D are two
/// return paths of length < 3|E^0|.
inline ConditionKOracles condition_K_oracles(const Graph& g) {
  ConditionKOracles out{true, true};
  for (const auto& h : all_hereditary_saturated(g))
    if (!condition_L(subgraph_without(g, h))) {
      out.hereditary_saturated = false;
      break;
    }
  const std::size_t bound = 3 * g.vertex_count();
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    unsigned c = return_path_count(g, static_cast<VertexId>(v), bound);
    if (c == 1) {
      out.return_paths = false;
      break;
    }
  }
  return out;
}

inline bool condition_K(const Graph& g) {
  auto o = condition_K_oracles(g);
  if (o.hereditary_saturated != o.return_paths)
    throw OracleMismatch("condition_K: hereditary-saturated and return-path formulations disagree");
  return o.hereditary_saturated;
}

// ---------------------------------------------------------------- verdicts

struct Verdicts {
  bool simple = false;  // sufficient criteria for simplicity are met
  std::string simple_reason;
  bool purely_infinite = false;
  std::string purely_infinite_reason;
  bool minimal = false;
  bool topologically_free = false;
  bool free = false;
};

inline Verdicts verdicts(const Graph& g) {
  Verdicts v;
  v.topologically_free = condition_L(g);
  v.free = condition_K(g);
  auto lattice = all_hereditary_saturated(g);
  v.minimal = lattice.size() <= 2;
  v.simple = v.topologically_free && v.minimal;
  if (v.simple)
    v.simple_reason = "criteria met: every loop has an exit and the hereditary saturated lattice is trivial";
  else if (!v.topologically_free)
    v.simple_reason = "criteria not met: some loop has no exit";
  else
    v.simple_reason = "criteria not met: nontrivial hereditary saturated subsets exist";
  bool no_sinks = g.sinks().empty();
  v.purely_infinite = no_sinks && v.topologically_free;
  if (v.purely_infinite)
    v.purely_infinite_reason = "no sinks and every loop has an exit";
  else if (!no_sinks)
    v.purely_infinite_reason = "the graph has sinks";
  else
    v.purely_infinite_reason = "some loop has no exit";
  return v;
}

}  // namespace graphint
