#pragma once

// Exact verification of the interaction axioms for (V, H) on a level F_N,
// and the related unit, corner, centrality and ideal checks.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "graphint/core_algebra.hpp"
#include "graphint/structure.hpp"

namespace graphint {

inline CoreElement expectation_H(const CoreAlgebra& alg, const CoreElement& a) { return alg.H(alg.V(a)); }
inline CoreElement expectation_V(const CoreAlgebra& alg, const CoreElement& a) { return alg.V(alg.H(a)); }

struct AxiomCheck {
  std::string name;
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::vector<std::string> examples;  // first few violating instances
  bool passed() const noexcept { return failures == 0; }
};

struct AxiomReport {
  std::size_t level = 0;
  std::size_t basis_size = 0;
  std::vector<AxiomCheck> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.passed(); });
  }
  const AxiomCheck& check(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return c;
    throw std::out_of_range("no axiom check named " + name);
  }
};

namespace detail {

inline constexpr std::size_t kMaxExamples = 5;

inline void record(AxiomCheck& c, bool ok, const std::function<std::string()>& describe) {
  ++c.instances;
  if (ok) return;
  ++c.failures;
  if (c.examples.size() < kMaxExamples) c.examples.push_back(describe());
}

inline std::string element_signature(const CoreElement& a) {
  std::string s = std::to_string(a.level);
  for (const auto& [k, c] : a.terms) s += ";" + std::to_string(k) + ":" + c.str();
  return s;
}

/// Distinct nonzero elements, in first-seen order.
inline std::vector<CoreElement> distinct_nonzero(std::vector<CoreElement> xs) {
  std::unordered_set<std::string> seen;
  std::vector<CoreElement> out;
  for (auto& x : xs)
    if (!x.is_zero() && seen.insert(element_signature(x)).second) out.push_back(std::move(x));
  return out;
}

/// Linear map on a fixed level given by its values on basis elements.
class TabulatedMap {
 public:
  TabulatedMap(const std::vector<PairKey>& basis, std::vector<CoreElement> images, std::size_t out_level)
      : images_(std::move(images)), out_level_(out_level) {
    for (std::size_t i = 0; i < basis.size(); ++i) index_.emplace(basis[i], i);
  }
  const CoreElement& at(std::size_t i) const { return images_[i]; }
  CoreElement operator()(const CoreElement& a) const {
    CoreElement r{out_level_, {}};
    for (const auto& [k, c] : a.terms) {
      auto it = index_.find(k);
      if (it == index_.end()) throw std::logic_error("tabulated map applied outside its basis");
      for (const auto& [kk, cc] : images_[it->second].terms) r.terms.emplace_back(kk, c * cc);
    }
    r.normalize();
    return r;
  }

 private:
  std::vector<CoreElement> images_;
  std::size_t out_level_;
  std::unordered_map<PairKey, std::size_t> index_;
};

/// Row and column supports of an element, as path ids.
inline std::vector<PathId> rows_of(const CoreElement& a) {
  std::vector<PathId> r;
  for (const auto& t : a.terms) r.push_back(key_mu(t.first));
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}
inline std::vector<PathId> cols_of(const CoreElement& a) {
  std::vector<PathId> r;
  for (const auto& t : a.terms) r.push_back(key_nu(t.first));
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

/// Checks M(x a) = M(x) M(a) and M(a x) = M(a) M(x) for all x in xs and all
/// basis elements a. A pair is evaluated when some product among x a, a x,
/// M(x) M(a), M(a) M(x) has overlapping inner supports; for every other pair
/// both sides are the zero element by the definition of the sparse product.
inline void check_multiplicative(const CoreAlgebra& alg, const std::vector<PairKey>& basis, std::size_t level,
                                 const TabulatedMap& m, const std::vector<CoreElement>& xs, AxiomCheck& left,
                                 AxiomCheck& right) {
  // Inverted indices: path id -> basis indices whose element (or image) has that row / column.
  std::unordered_map<PathId, std::vector<std::size_t>> by_row, by_col, by_img_row, by_img_col;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    by_row[key_mu(basis[i])].push_back(i);
    by_col[key_nu(basis[i])].push_back(i);
    for (PathId p : rows_of(m.at(i))) by_img_row[p].push_back(i);
    for (PathId p : cols_of(m.at(i))) by_img_col[p].push_back(i);
  }
  auto gather = [](std::vector<std::size_t>& out, const std::unordered_map<PathId, std::vector<std::size_t>>& idx,
                   const std::vector<PathId>& keys) {
    for (PathId p : keys) {
      auto it = idx.find(p);
      if (it != idx.end()) out.insert(out.end(), it->second.begin(), it->second.end());
    }
  };
  for (const auto& x : xs) {
    CoreElement mx = m(x);
    std::vector<std::size_t> cand_left, cand_right;
    gather(cand_left, by_row, cols_of(x));
    gather(cand_left, by_img_row, cols_of(mx));
    gather(cand_right, by_col, rows_of(x));
    gather(cand_right, by_img_col, rows_of(mx));
    for (auto* cand : {&cand_left, &cand_right}) {
      std::sort(cand->begin(), cand->end());
      cand->erase(std::unique(cand->begin(), cand->end()), cand->end());
    }
    left.instances += basis.size() - cand_left.size();
    right.instances += basis.size() - cand_right.size();
    for (std::size_t i : cand_left) {
      CoreElement a = alg.basis_element(basis[i], level);
      record(left, m(alg.mul(x, a)) == alg.mul(mx, m.at(i)), [&] {
        return "x=" + alg.to_string(x) + " a=" + alg.to_string(a);
      });
    }
    for (std::size_t i : cand_right) {
      CoreElement a = alg.basis_element(basis[i], level);
      record(right, m(alg.mul(a, x)) == alg.mul(m.at(i), mx), [&] {
        return "a=" + alg.to_string(a) + " x=" + alg.to_string(x);
      });
    }
  }
}

}  // namespace detail

/// Axioms VHV = V, HVH = H, V multiplicative against H-range elements, H
/// multiplicative against V-range elements, checked exactly on F_N, plus the
/// unit and corner identities V(1)V(a) = V(a), H(V(a)) = H(1) a H(1) and
/// V(H(a)) = V(1) a V(1). The range elements are E_H(b) = H(V(b)) and
/// E_V(b) = V(H(b)) for basis b; they span the ranges, so bilinearity covers
/// all products.
inline AxiomReport verify_interaction_axioms(const Graph& g, std::size_t level) {
  if (level < 1) throw std::invalid_argument("verify_interaction_axioms: level must be >= 1");
  CoreAlgebra alg(g, level + 1);
  const auto basis = alg.basis(level);
  AxiomReport rep;
  rep.level = level;
  rep.basis_size = basis.size();

  std::vector<CoreElement> v_img, h_img;
  v_img.reserve(basis.size());
  h_img.reserve(basis.size());
  for (PairKey k : basis) {
    CoreElement a = alg.basis_element(k, level);
    v_img.push_back(alg.V(a));
    h_img.push_back(alg.H(a));
  }
  detail::TabulatedMap Vt(basis, v_img, level + 1), Ht(basis, h_img, level - 1);

  AxiomCheck vhv{"VHV=V"}, hvh{"HVH=H"}, vl{"V(xa)=V(x)V(a), x in H(F)"}, vr{"V(ax)=V(a)V(x), x in H(F)"},
      hl{"H(ya)=H(y)H(a), y in V(F)"}, hr{"H(ay)=H(a)H(y), y in V(F)"}, vunit{"V(1)V(a)=V(a)"},
      ehc{"H(V(a))=H(1)aH(1)"}, evc{"V(H(a))=V(1)aV(1)"};

  const CoreElement one = alg.unit(level);
  const CoreElement V1 = alg.V(one), H1 = alg.H(one);
  std::vector<CoreElement> eh, ev;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    CoreElement a = alg.basis_element(basis[i], level);
    auto describe = [&] { return "a=" + alg.to_string(a); };
    const CoreElement& va = v_img[i];
    const CoreElement& ha = h_img[i];
    detail::record(vhv, alg.V(alg.H(va)) == va, describe);
    CoreElement vha = alg.V(ha);  // level N
    detail::record(hvh, alg.H(vha) == ha, describe);
    detail::record(vunit, alg.mul(V1, va) == va, describe);
    CoreElement hva = alg.H(va);  // level N
    detail::record(ehc, alg.equal(hva, alg.mul(alg.mul(H1, a), H1)), describe);
    detail::record(evc, alg.equal(vha, alg.mul(alg.mul(V1, a), V1)), describe);
    eh.push_back(std::move(hva));
    ev.push_back(std::move(vha));
  }
  eh = detail::distinct_nonzero(std::move(eh));
  ev = detail::distinct_nonzero(std::move(ev));
  detail::check_multiplicative(alg, basis, level, Vt, eh, vl, vr);
  detail::check_multiplicative(alg, basis, level, Ht, ev, hl, hr);

  rep.checks = {vhv, hvh, vl, vr, hl, hr, vunit, ehc, evc};
  return rep;
}

/// H^n(1), at level 0.
inline CoreElement H_power_unit(const CoreAlgebra& alg, unsigned n) {
  CoreElement x = alg.unit(0);
  for (unsigned i = 0; i < n; ++i) x = alg.H(x);
  return x;
}

/// a commutes with every basis element of F_M (a promoted to max(level, M)).
inline bool centrality_check(const CoreAlgebra& alg, const CoreElement& a, std::size_t m) {
  std::size_t lvl = std::max(a.level, m);
  CoreElement x = alg.include_to_level(a, lvl);
  for (PairKey k : alg.basis(m)) {
    CoreElement b = alg.include_to_level(alg.basis_element(k, m), lvl);
    if (alg.mul(x, b) != alg.mul(b, x)) return false;
  }
  return true;
}

/// Every term has its range in `hs`. For a hereditary saturated set this is
/// membership in the ideal generated by {p_v : v in hs}, at any level.
inline bool in_ideal(const CoreAlgebra& alg, const VertexSet& hs, const CoreElement& a) {
  return std::all_of(a.terms.begin(), a.terms.end(), [&](const auto& t) {
    return std::binary_search(hs.begin(), hs.end(), alg.paths().range(key_mu(t.first)));
  });
}

/// V and H map every ideal basis element of F_n, n <= N, back into the ideal.
inline bool ideal_invariance_check(const Graph& g, const VertexSet& hs, std::size_t level) {
  if (!is_hereditary_saturated(g, hs)) throw std::invalid_argument("ideal_invariance_check: set is not hereditary saturated");
  CoreAlgebra alg(g, level + 1);
  for (std::size_t n = 0; n <= level; ++n)
    for (PairKey k : alg.basis(n)) {
      CoreElement a = alg.basis_element(k, n);
      if (!in_ideal(alg, hs, a)) continue;
      if (!in_ideal(alg, hs, alg.V(a)) || !in_ideal(alg, hs, alg.H(a))) return false;
    }
  return true;
}

struct DiagonalProbe {
  std::size_t diagonal_basis = 0;
  std::size_t preserved = 0;  // diagonal basis elements whose V-image is diagonal
  bool all_preserved() const noexcept { return preserved == diagonal_basis; }
};

/// Counts diagonal basis elements of F_N whose V-image stays diagonal. No
/// characterization is asserted.
inline DiagonalProbe diagonal_preservation_probe(const Graph& g, std::size_t level) {
  CoreAlgebra alg(g, level + 1);
  DiagonalProbe p;
  for (PairKey k : alg.basis(level)) {
    if (key_mu(k) != key_nu(k)) continue;
    ++p.diagonal_basis;
    if (alg.is_diagonal(alg.V(alg.basis_element(k, level)))) ++p.preserved;
  }
  return p;
}

}  // namespace graphint
