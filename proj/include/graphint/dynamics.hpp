#pragma once

// The shift on decidable points, the basic sets U_{v,n} of the quotient,
// periodic orbits of exit-free loops, ancestor subdiagrams and path states.

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "graphint/bratteli.hpp"
#include "graphint/core_algebra.hpp"
#include "graphint/path_point.hpp"
#include "graphint/structure.hpp"

namespace graphint {

namespace detail {
inline Mask reachable_from(const Graph& g, VertexId v) {
  Mask m(g.vertex_count(), 0);
  m[v] = 1;
  return m;
}
}  // namespace detail

/// [mu] in U_{v,n}: some path eta of length k runs from v to the base vertex of
/// level n + k. Membership is closed upward in k, so it depends only on the class.
/// Lassos are decided exactly: the pair (vertices reachable in exactly k steps,
/// cycle phase of n + k) takes finitely many values, and the search stops at the
/// first repeated pair.
inline bool in_basis_set(const Graph& g, const QuotientClass& c, VertexId v, std::size_t n) {
  {
    // v in r(E^n): some length-n path ends at v.
    Mask cur(g.vertex_count(), 1);
    for (std::size_t k = 0; k < n; ++k) cur = detail::step_forward(g, cur);
    if (!cur[v]) throw std::invalid_argument("in_basis_set: vertex is not the range of a path of the given length");
  }
  const PathPoint& p = c.representative();
  Mask r = detail::reachable_from(g, v);
  if (p.is_sink_path()) {
    if (n > p.length()) return false;
    for (std::size_t k = 0; k < p.length() - n; ++k) r = detail::step_forward(g, r);
    return r[p.base_vertex(g, p.length())] != 0;
  }
  const std::size_t pre = p.prefix().length(), period = p.cycle().size();
  std::set<std::pair<Mask, std::size_t>> seen;
  for (std::size_t k = 0;; ++k) {
    std::size_t m = n + k;
    if (r[p.base_vertex(g, m)]) return true;
    if (m >= pre && !seen.emplace(r, (m - pre) % period).second) return false;
    r = detail::step_forward(g, r);
  }
}

struct PeriodicOrbit {
  Path loop;  // exit-free loop generating the orbit
  std::vector<QuotientClass> classes;  // [mu^inf], [sigma mu^inf], ...
};

/// One orbit per exit-free loop, of length equal to the loop length.
inline std::vector<PeriodicOrbit> periodic_orbits(const Graph& g) {
  std::vector<PeriodicOrbit> out;
  for (const Path& loop : exit_free_loops(g)) {
    PeriodicOrbit o{loop, {}};
    PathPoint x = PathPoint::periodic(g, loop);
    for (std::size_t i = 0; i < loop.length(); ++i) {
      o.classes.push_back(QuotientClass::of(g, x));
      x = shift(g, x);
    }
    out.push_back(std::move(o));
  }
  return out;
}

/// Witnesses for the dichotomy: orbits from exit-free loops when (L) fails,
/// otherwise an exit for every simple loop.
struct DichotomyWitness {
  bool topologically_free = false;
  std::vector<PeriodicOrbit> orbits;
  std::vector<std::pair<Path, EdgeId>> loop_exits;
};

inline DichotomyWitness dichotomy_witness(const Graph& g) {
  DichotomyWitness w;
  w.orbits = periodic_orbits(g);
  w.topologically_free = w.orbits.empty();
  if (w.topologically_free)
    for (const Path& loop : simple_loops(g)) w.loop_exits.emplace_back(loop, *loop_exit(g, loop));
  return w;
}

/// Nodes of the Bratteli diagram, per level 0..levels, from which the base
/// vertices of p can be reached. The base of a sink path of length L past
/// level L is the tail r(p)^(L).
inline std::vector<std::vector<BratteliNode>> ancestors_diagram(const Graph& g, const PathPoint& p,
                                                                std::size_t levels) {
  BratteliDiagram d = bratteli(g, std::max<std::size_t>(levels, 1));
  QuotientClass c = QuotientClass::of(g, p);
  std::vector<std::vector<BratteliNode>> w(levels + 1);
  for (std::size_t n = 0; n <= levels; ++n)
    for (const BratteliNode& node : d.nodes[n]) {
      bool keep = false;
      if (node.tail) {
        keep = p.is_sink_path() && node.path_length == p.length() && node.vertex == p.prefix().range(g);
      } else {
        keep = in_basis_set(g, c, node.vertex, n);
      }
      if (keep) w[n].push_back(node);
    }
  return w;
}

/// omega_p(a): sum of the coefficients of s_nu s_nu^* with nu a prefix of p.
inline RadicalScalar state_eval(const CoreAlgebra& alg, const PathPoint& p, const CoreElement& a) {
  const PathSpace& ps = alg.paths();
  RadicalScalar sum;
  for (const auto& [k, c] : a.terms) {
    PathId mu = key_mu(k);
    if (mu != key_nu(k)) continue;
    std::size_t len = ps.length(mu);
    if (ps.source(mu) != p.source()) continue;
    if (p.is_sink_path() && len > p.length()) continue;
    Path path = ps.path(mu);
    bool prefix = true;
    for (std::size_t i = 0; i < len && prefix; ++i) prefix = path.edges[i] == p.edge_at(i);
    if (prefix) sum += c;
  }
  return sum;
}

}  // namespace graphint
