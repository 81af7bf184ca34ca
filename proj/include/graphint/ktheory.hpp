#pragma once

// K-groups from Delta_E(v) = v - sum_{s(e)=v} r(e), and an independent route
// through the truncated presentation of K_0 of the core and the map iota - H_*.

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "graphint/graph.hpp"
#include "graphint/int_matrix.hpp"

namespace graphint {

/// Rows indexed by all vertices, columns by non-sinks; entry (w, v) = [w = v] - A(v, w).
inline IntMatrix delta_matrix(const Graph& g) {
  std::vector<VertexId> cols;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (!g.is_sink(v)) cols.push_back(v);
  IntMatrix d(g.vertex_count(), cols.size());
  std::vector<std::string> col_names;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    d(cols[j], j) += 1;
    for (EdgeId e : g.out_edges(cols[j])) d(g.dst(e), j) -= 1;
    col_names.push_back(g.vertex_name(cols[j]));
  }
  d.set_labels(g.vertex_names(), std::move(col_names));
  return d;
}

struct KGroups {
  AbelianGroup K0, K1;
};

inline KGroups k_groups(const Graph& g) {
  IntMatrix d = delta_matrix(g);
  return {cokernel_group(d), kernel_group(d)};
}

inline const char* direction_note() {
  return "K0 = coker(Delta_E) and K1 = ker(Delta_E). The reversed assignment K0 = ker, K1 = coker is rejected: "
         "for one vertex with n >= 2 loops it would give K0 = 0 and K1 = Z/(n-1), while the Cuntz algebra O_n has "
         "K0 = Z/(n-1) and K1 = 0.";
}

// ---------------------------------------------------------------- truncated presentation

struct Generator {
  VertexId vertex = 0;
  std::size_t level = 0;  // v^(k) with v in r(E^k)
  friend bool operator==(const Generator&, const Generator&) = default;
};

struct K0Presentation {
  std::size_t level = 0;
  std::vector<Generator> generators;  // ordered by level, then vertex
  IntMatrix relations;                // one row v^(k) - sum_{s(e)=v} r(e)^(k+1) per non-sink v^(k), k < N
  std::size_t free_rank = 0;          // rank of K_0(F_N)

  std::size_t index(VertexId v, std::size_t k) const {
    for (std::size_t i = 0; i < generators.size(); ++i)
      if (generators[i].vertex == v && generators[i].level == k) return i;
    return generators.size();
  }
  std::string name(const Graph& g, std::size_t i) const {
    return g.vertex_name(generators[i].vertex) + "^(" + std::to_string(generators[i].level) + ")";
  }
};

inline K0Presentation k0_core_presentation(const Graph& g, std::size_t level) {
  if (level < 1) throw std::invalid_argument("k0_core_presentation: level must be >= 1");
  const std::size_t nv = g.vertex_count();
  K0Presentation p;
  p.level = level;
  std::vector<char> in_range(nv, 1);
  std::vector<std::vector<char>> present;
  for (std::size_t k = 0; k <= level; ++k) {
    if (k > 0) {
      std::vector<char> next(nv, 0);
      for (const auto& e : g.edges())
        if (in_range[e.src]) next[e.dst] = 1;
      in_range = std::move(next);
    }
    present.push_back(in_range);
    for (VertexId v = 0; v < nv; ++v)
      if (in_range[v]) p.generators.push_back({v, k});
  }
  std::vector<std::vector<Integer>> rows;
  for (std::size_t i = 0; i < p.generators.size(); ++i) {
    auto [v, k] = p.generators[i];
    if (k == level || g.is_sink(v)) continue;
    std::vector<Integer> row(p.generators.size());
    row[i] += 1;
    for (EdgeId e : g.out_edges(v)) row[p.index(g.dst(e), k + 1)] -= 1;
    rows.push_back(std::move(row));
  }
  p.relations = IntMatrix(rows.size(), p.generators.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) p.relations(r, c) = rows[r][c];
  std::vector<std::string> names;
  for (std::size_t i = 0; i < p.generators.size(); ++i) names.push_back(p.name(g, i));
  p.relations.set_labels({}, std::move(names));
  p.free_rank = cokernel_group(p.relations.transpose()).free_rank;
  if (rows.empty()) p.free_rank = p.generators.size();
  return p;
}

/// Matrix of H_* (column i = image of generator i): v^(k+1) -> v^(k),
/// v^(0) -> sum_{s(e)=v} r(e)^(0) for non-sinks, sink w^(0) -> 0.
inline IntMatrix hstar_action(const Graph& g, const K0Presentation& p) {
  const std::size_t n = p.generators.size();
  IntMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto [v, k] = p.generators[i];
    if (k > 0) {
      h(p.index(v, k - 1), i) += 1;
    } else if (!g.is_sink(v)) {
      for (EdgeId e : g.out_edges(v)) h(p.index(g.dst(e), 0), i) += 1;
    }
  }
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(p.name(g, i));
  h.set_labels(names, names);
  return h;
}

struct PVResult {
  std::size_t level = 0;
  AbelianGroup K0, K1;
  bool stabilized = false;  // same groups one level lower
  bool agrees = false;      // same groups as k_groups
};

namespace detail {

/// Columns [a | b] side by side.
inline IntMatrix hcat(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

inline IntMatrix select_rows(const IntMatrix& m, const std::vector<std::size_t>& rows) {
  IntMatrix r(rows.size(), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(rows[i], j);
  return r;
}

/// A Z-basis (as columns) of the lattice spanned by the columns of m.
inline IntMatrix column_lattice_basis(const IntMatrix& m) {
  auto s = smith_normal_form(m);
  // U M W = D, so M W = U^{-1} D and the lattice is spanned by the first rank columns of U^{-1} D.
  IntMatrix mw = m * s.W;
  IntMatrix b(m.rows(), s.rank());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < s.rank(); ++j) b(i, j) = mw(i, j);
  return b;
}

inline std::pair<AbelianGroup, AbelianGroup> pv_groups(const Graph& g, std::size_t level) {
  K0Presentation p = k0_core_presentation(g, level);
  const std::size_t n = p.generators.size();
  IntMatrix rel = p.relations.transpose();  // generators x relations
  IntMatrix h = hstar_action(g, p);

  // Domain: generators other than sink v^(0).
  std::vector<std::size_t> dom;
  for (std::size_t i = 0; i < n; ++i)
    if (p.generators[i].level > 0 || !g.is_sink(p.generators[i].vertex)) dom.push_back(i);
  IntMatrix f(n, dom.size());  // iota - H_* on domain generators
  for (std::size_t j = 0; j < dom.size(); ++j) {
    f(dom[j], j) += 1;
    for (std::size_t i = 0; i < n; ++i) f(i, j) -= h(i, dom[j]);
  }

  AbelianGroup k0 = cokernel_group(hcat(rel, f));

  // Every relation lives on domain generators, so the domain group is Z^dom / R_dom.
  // ker = {x : f x in im R} / R_dom.
  IntMatrix rel_dom = select_rows(rel, dom);
  IntMatrix neg_rel(n, rel.cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < rel.cols(); ++j) neg_rel(i, j) = -rel(i, j);
  IntMatrix kb = kernel_basis(hcat(f, neg_rel));
  IntMatrix xs(dom.size(), kb.cols());
  for (std::size_t i = 0; i < dom.size(); ++i)
    for (std::size_t j = 0; j < kb.cols(); ++j) xs(i, j) = kb(i, j);
  AbelianGroup k1;
  if (xs.cols() > 0) {
    IntMatrix basis = column_lattice_basis(xs);
    if (basis.cols() > 0) {
      IntMatrix y = rel_dom.cols() ? solve_integral(basis, rel_dom) : IntMatrix(basis.cols(), 0);
      k1 = y.cols() ? cokernel_group(y) : AbelianGroup{basis.cols(), {}};
    }
  }
  return {k0, k1};
}

}  // namespace detail

/// Groups of iota - H_* on the presentation truncated at `level`.
inline PVResult pv_truncated_oracle(const Graph& g, std::size_t level) {
  if (level < 2) throw std::invalid_argument("pv_truncated_oracle: level must be >= 2");
  PVResult r;
  r.level = level;
  std::tie(r.K0, r.K1) = detail::pv_groups(g, level);
  auto [k0_prev, k1_prev] = detail::pv_groups(g, level - 1);
  r.stabilized = r.K0 == k0_prev && r.K1 == k1_prev;
  KGroups k = k_groups(g);
  r.agrees = r.K0 == k.K0 && r.K1 == k.K1;
  return r;
}

inline nlohmann::ordered_json to_json(const KGroups& k, const IntMatrix& delta, const PVResult& pv) {
  nlohmann::ordered_json j;
  j["K0"] = k.K0.to_json();
  j["K1"] = k.K1.to_json();
  j["K0_text"] = k.K0.str();
  j["K1_text"] = k.K1.str();
  j["delta_matrix"] = delta.to_json();
  j["pv_oracle_level"] = pv.level;
  j["pv_oracle_stabilized"] = pv.stabilized;
  j["pv_oracle_agrees"] = pv.agrees;
  j["direction_note"] = direction_note();
  return j;
}

}  // namespace graphint
