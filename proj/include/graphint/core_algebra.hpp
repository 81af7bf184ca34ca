#pragma once

// Finite levels F_N of the core: sparse combinations of matrix units
// s_mu s_nu^* with |mu| = |nu| and r(mu) = r(nu), plus the maps V, H and phi.
//
// Level N has basis pairs with |mu| = N, or with r(mu) a sink and |mu| <= N.
// Conventions: n_v is the in-degree, s = sum_e s_e / sqrt(n_{r(e)}),
// V(a) = s a s^*, H(a) = s^* a s.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graphint/errors.hpp"
#include "graphint/graph.hpp"
#include "graphint/path_space.hpp"
#include "graphint/radical.hpp"

namespace graphint {

using PairKey = std::uint64_t;

inline PairKey pair_key(PathId mu, PathId nu) { return (PairKey{mu} << 32) | nu; }
inline PathId key_mu(PairKey k) { return static_cast<PathId>(k >> 32); }
inline PathId key_nu(PairKey k) { return static_cast<PathId>(k & 0xffffffffu); }

struct CoreElement {
  using Term = std::pair<PairKey, RadicalScalar>;

  std::size_t level = 0;
  std::vector<Term> terms;  // sorted by key, no zero coefficients

  bool is_zero() const noexcept { return terms.empty(); }

  /// Coefficient of (mu, nu), zero if absent.
  RadicalScalar coeff(PathId mu, PathId nu) const {
    PairKey k = pair_key(mu, nu);
    auto it = std::lower_bound(terms.begin(), terms.end(), k, [](const Term& t, PairKey x) { return t.first < x; });
    return (it != terms.end() && it->first == k) ? it->second : RadicalScalar{};
  }

  friend bool operator==(const CoreElement& a, const CoreElement& b) {
    return a.level == b.level && a.terms == b.terms;
  }

  /// Sorts, merges equal keys and drops zeros. Sorting goes through an index
  /// permutation so the scalars themselves move once.
  void normalize() {
    const bool strictly_sorted = std::adjacent_find(terms.begin(), terms.end(), [](const Term& x, const Term& y) {
                                   return x.first >= y.first;
                                 }) == terms.end();
    std::vector<Term> out;
    out.reserve(terms.size());
    auto push = [&out](Term& t) {
      if (!out.empty() && out.back().first == t.first) {
        out.back().second += t.second;
        return;
      }
      if (!out.empty() && out.back().second.is_zero()) out.pop_back();
      out.push_back(std::move(t));
    };
    if (strictly_sorted) {
      for (auto& t : terms) push(t);
    } else {
      std::vector<std::uint32_t> idx(terms.size());
      for (std::uint32_t i = 0; i < idx.size(); ++i) idx[i] = i;
      std::sort(idx.begin(), idx.end(), [this](std::uint32_t x, std::uint32_t y) {
        return terms[x].first < terms[y].first;
      });
      for (auto i : idx) push(terms[i]);
    }
    if (!out.empty() && out.back().second.is_zero()) out.pop_back();
    terms = std::move(out);
  }
};

/// Adjoint swaps each pair; coefficients are real.
inline CoreElement adjoint(const CoreElement& a) {
  CoreElement r{a.level, {}};
  r.terms.reserve(a.terms.size());
  for (const auto& [k, c] : a.terms) r.terms.emplace_back(pair_key(key_nu(k), key_mu(k)), c);
  std::sort(r.terms.begin(), r.terms.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return r;
}

class CoreAlgebra {
 public:
  /// Elements up to `max_level` are representable; V of a top-level element throws BoundExceeded.
  CoreAlgebra(Graph g, std::size_t max_level, std::size_t path_bound = PathSpace::kDefaultPathBound)
      : paths_(std::move(g), max_level, path_bound) {
    std::vector<std::size_t> degrees;
    for (VertexId v = 0; v < graph().vertex_count(); ++v)
      if (graph().in_degree(v) > 0) degrees.push_back(graph().in_degree(v));
    for (std::size_t a : degrees)
      for (std::size_t b : degrees) inv_sqrt_.try_emplace(std::uint64_t{a} * b, RadicalScalar::inv_sqrt(a * b));
  }

  const PathSpace& paths() const noexcept { return paths_; }
  const Graph& graph() const noexcept { return paths_.graph(); }
  std::size_t max_level() const noexcept { return paths_.max_length(); }

  bool is_basis_pair(PathId mu, PathId nu, std::size_t level) const {
    if (paths_.length(mu) != paths_.length(nu) || paths_.range(mu) != paths_.range(nu)) return false;
    std::size_t len = paths_.length(mu);
    return len == level || (len < level && graph().is_sink(paths_.range(mu)));
  }

  /// Basis pairs of F_N, sorted by key.
  std::vector<PairKey> basis(std::size_t level) const {
    check_level(level);
    std::vector<PairKey> out;
    const Graph& g = graph();
    for (std::size_t k = 0; k <= level; ++k)
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (k < level && !g.is_sink(v)) continue;
        auto ps = paths_.ending_at(k, v);
        for (PathId mu : ps)
          for (PathId nu : ps) out.push_back(pair_key(mu, nu));
      }
    std::sort(out.begin(), out.end());
    return out;
  }

  CoreElement basis_element(PairKey k, std::size_t level) const {
    if (!is_basis_pair(key_mu(k), key_nu(k), level)) throw std::invalid_argument("not a basis pair at this level");
    return CoreElement{level, {{k, RadicalScalar(1)}}};
  }

  /// s_mu s_nu^* at level |mu|.
  CoreElement matrix_unit(PathId mu, PathId nu, RadicalScalar c = RadicalScalar(1)) const {
    if (paths_.length(mu) != paths_.length(nu) || paths_.range(mu) != paths_.range(nu))
      throw std::invalid_argument("matrix_unit: paths differ in length or range");
    CoreElement r{paths_.length(mu), {}};
    if (!c.is_zero()) r.terms.emplace_back(pair_key(mu, nu), std::move(c));
    return r;
  }
  CoreElement matrix_unit(const Path& mu, const Path& nu) const {
    return matrix_unit(paths_.id_of(mu), paths_.id_of(nu));
  }

  CoreElement unit(std::size_t level) const {
    check_level(level);
    CoreElement r{0, {}};
    for (VertexId v = 0; v < graph().vertex_count(); ++v) r.terms.emplace_back(pair_key(v, v), RadicalScalar(1));
    return include_to_level(r, level);
  }

  /// p_v embedded at the given level.
  CoreElement vertex_projection(VertexId v, std::size_t level = 0) const {
    return include_to_level(matrix_unit(paths_.vertex(v), paths_.vertex(v)), level);
  }

  CoreElement zero(std::size_t level) const { return CoreElement{level, {}}; }

  /// Unital embedding F_N -> F_M: (mu, nu) -> sum_{s(e)=r(mu)} (mu e, nu e) per level; sink terms stay.
  CoreElement include_to_level(const CoreElement& a, std::size_t m) const {
    if (m < a.level) throw std::invalid_argument("include_to_level: target below current level");
    check_level(m);
    CoreElement cur = a;
    const Graph& g = graph();
    for (std::size_t n = a.level; n < m; ++n) {
      CoreElement next{n + 1, {}};
      next.terms.reserve(cur.terms.size());
      bool moved = false;
      for (auto& [k, c] : cur.terms) {
        PathId mu = key_mu(k), nu = key_nu(k);
        VertexId r = paths_.range(mu);
        if (paths_.length(mu) == n && !g.is_sink(r)) {
          std::size_t deg = g.out_degree(r);
          for (std::size_t j = 0; j < deg; ++j)
            next.terms.emplace_back(pair_key(paths_.append_at(mu, j), paths_.append_at(nu, j)), c);
          moved = true;
        } else {
          next.terms.emplace_back(k, std::move(c));
        }
      }
      if (moved) next.normalize();
      cur = std::move(next);
    }
    return cur;
  }

  CoreElement add(const CoreElement& a, const CoreElement& b) const {
    auto [x, y] = promote(a, b);
    x.terms.insert(x.terms.end(), std::make_move_iterator(y.terms.begin()), std::make_move_iterator(y.terms.end()));
    x.normalize();
    return x;
  }
  CoreElement sub(const CoreElement& a, const CoreElement& b) const { return add(a, scale(b, RadicalScalar(-1))); }

  static CoreElement scale(CoreElement a, const RadicalScalar& c) {
    if (c.is_zero()) return CoreElement{a.level, {}};
    for (auto& t : a.terms) t.second *= c;
    return a;
  }

  /// (mu, nu)(alpha, beta) = [nu = alpha] (mu, beta), after promoting to a common level.
  CoreElement mul(const CoreElement& a, const CoreElement& b) const {
    if (a.level == b.level) return mul_same_level(a, b);
    auto [x, y] = promote(a, b);
    return mul_same_level(x, y);
  }

  bool equal(const CoreElement& a, const CoreElement& b) const {
    if (a.level == b.level) return a.terms == b.terms;
    auto [x, y] = promote(a, b);
    return x.terms == y.terms;
  }

  /// V(s_mu s_nu^*) = (n_{s(mu)} n_{s(nu)})^{-1/2} sum_{r(e)=s(mu), r(f)=s(nu)} s_{e mu} s_{f nu}^*.
  CoreElement V(const CoreElement& a) const {
    check_level(a.level + 1);
    const Graph& g = graph();
    CoreElement r{a.level + 1, {}};
    for (const auto& [k, c] : a.terms) {
      PathId mu = key_mu(k), nu = key_nu(k);
      std::size_t nm = g.in_degree(paths_.source(mu)), nn = g.in_degree(paths_.source(nu));
      if (nm == 0 || nn == 0) continue;
      RadicalScalar coef = c * inv_sqrt_product(nm, nn);
      for (std::size_t i = 0; i < nm; ++i) {
        PathId emu = paths_.prepend_at(mu, i);
        for (std::size_t j = 0; j < nn; ++j) r.terms.emplace_back(pair_key(emu, paths_.prepend_at(nu, j)), coef);
      }
    }
    r.normalize();
    return r;
  }

  /// H(s_{e mu} s_{f nu}^*) = (n_{s(mu)} n_{s(nu)})^{-1/2} s_mu s_nu^*,
  /// H(p_v) = sum_{s(e)=v} p_{r(e)} / n_{r(e)}, and 0 on sink projections.
  CoreElement H(const CoreElement& a) const {
    const Graph& g = graph();
    CoreElement r{a.level == 0 ? 0 : a.level - 1, {}};
    for (const auto& [k, c] : a.terms) {
      PathId mu = key_mu(k), nu = key_nu(k);
      if (paths_.length(mu) == 0) {
        for (EdgeId e : g.out_edges(mu)) {
          VertexId w = g.dst(e);
          r.terms.emplace_back(pair_key(w, w), c * RadicalScalar(Rational(Integer(1), Integer(g.in_degree(w)))));
        }
        continue;
      }
      PathId mt = paths_.tail(mu), nt = paths_.tail(nu);
      r.terms.emplace_back(pair_key(mt, nt),
                           c * inv_sqrt_product(g.in_degree(paths_.source(mt)), g.in_degree(paths_.source(nt))));
    }
    r.normalize();
    return r;
  }

  /// phi(s_mu s_mu^*) = sum_{r(e)=s(mu)} s_{e mu} s_{e mu}^*, defined on diagonal elements.
  CoreElement phi_diagonal(const CoreElement& a) const {
    check_level(a.level + 1);
    CoreElement r{a.level + 1, {}};
    for (const auto& [k, c] : a.terms) {
      PathId mu = key_mu(k);
      if (mu != key_nu(k)) throw std::invalid_argument("phi_diagonal: element is not diagonal");
      std::size_t n = graph().in_degree(paths_.source(mu));
      for (std::size_t i = 0; i < n; ++i) {
        PathId emu = paths_.prepend_at(mu, i);
        r.terms.emplace_back(pair_key(emu, emu), c);
      }
    }
    r.normalize();
    return r;
  }

  bool is_diagonal(const CoreElement& a) const {
    return std::all_of(a.terms.begin(), a.terms.end(), [](const auto& t) { return key_mu(t.first) == key_nu(t.first); });
  }

  /// a a = a and a^* = a.
  bool is_projection(const CoreElement& a) const { return adjoint(a) == a && mul(a, a) == a; }

  /// Human-readable "c*(mu,nu) + ..." with paths printed by edge names.
  std::string to_string(const CoreElement& a) const {
    if (a.is_zero()) return "0";
    std::string out;
    for (const auto& [k, c] : a.terms) {
      if (!out.empty()) out += " + ";
      out += "(" + c.str() + ")*(" + paths_.name(key_mu(k)) + "," + paths_.name(key_nu(k)) + ")";
    }
    return out;
  }

 private:
  void check_level(std::size_t level) const {
    if (level > paths_.max_length())
      throw BoundExceeded("level " + std::to_string(level) + " exceeds the algebra's maximum level " +
                          std::to_string(paths_.max_length()));
  }

  std::pair<CoreElement, CoreElement> promote(const CoreElement& a, const CoreElement& b) const {
    std::size_t m = std::max(a.level, b.level);
    return {include_to_level(a, m), include_to_level(b, m)};
  }

  static CoreElement mul_same_level(const CoreElement& a, const CoreElement& b) {
    CoreElement r{a.level, {}};
    r.terms.reserve(a.terms.size());
    auto by_key = [](const CoreElement::Term& t, PairKey x) { return t.first < x; };
    for (const auto& [ka, ca] : a.terms) {
      PathId col = key_nu(ka);
      auto it = std::lower_bound(b.terms.begin(), b.terms.end(), pair_key(col, 0), by_key);
      for (; it != b.terms.end() && key_mu(it->first) == col; ++it)
        r.terms.emplace_back(pair_key(key_mu(ka), key_nu(it->first)), ca * it->second);
    }
    r.normalize();
    return r;
  }

  /// (n m)^{-1/2} for in-degrees n, m > 0, precomputed so lookups stay const.
  const RadicalScalar& inv_sqrt_product(std::size_t n, std::size_t m) const {
    return inv_sqrt_.at(std::uint64_t{n} * m);
  }

  PathSpace paths_;
  std::map<std::uint64_t, RadicalScalar> inv_sqrt_;
};

}  // namespace graphint
