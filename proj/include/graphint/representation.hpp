#pragma once

// Truncated path-space representation: operators on span{delta_alpha : |alpha| <= L}
// with basis order = PathSpace ids (vertices, then length, then lexicographic edge ids).
// S_e delta_alpha = delta_{e alpha} when r(e) = s(alpha) and |alpha| < L, else 0.
//
// Truncation windows, by direct computation on basis vectors:
//   S_e^* S_e = P_{r(e)}       holds for |alpha| <= L-1, fails at |alpha| = L iff E^{L+1} is nonempty;
//   P_v = sum S_e S_e^*        holds for |alpha| >= 1 and fails on delta_v itself for every v in s(E^1),
//                              since finite paths are not CK-reducible at length 0;
//   S^* pi(a) S = pi(H(a))     holds for |alpha| <= L-1;
//   S pi(a) S^* = pi(V(a))     holds on the whole space.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "graphint/core_algebra.hpp"
#include "graphint/path_space.hpp"
#include "graphint/radical.hpp"

namespace graphint {

/// Square sparse matrix stored by columns; each column sorted by row, no zeros.
class SparseMatrix {
 public:
  using Entry = std::pair<std::uint32_t, RadicalScalar>;

  SparseMatrix() = default;
  explicit SparseMatrix(std::size_t n) : cols_(n) {}

  static SparseMatrix identity(std::size_t n) {
    SparseMatrix m(n);
    for (std::size_t j = 0; j < n; ++j) m.cols_[j].emplace_back(static_cast<std::uint32_t>(j), RadicalScalar(1));
    return m;
  }

  std::size_t size() const noexcept { return cols_.size(); }
  const std::vector<Entry>& column(std::size_t j) const { return cols_.at(j); }

  RadicalScalar at(std::size_t i, std::size_t j) const {
    for (const auto& [r, c] : cols_.at(j))
      if (r == i) return c;
    return {};
  }

  /// Adds c at (i, j).
  void add(std::size_t i, std::size_t j, const RadicalScalar& c) {
    auto& col = cols_.at(j);
    auto it = std::lower_bound(col.begin(), col.end(), i, [](const Entry& e, std::size_t x) { return e.first < x; });
    if (it != col.end() && it->first == i) {
      it->second += c;
      if (it->second.is_zero()) col.erase(it);
    } else if (!c.is_zero()) {
      col.insert(it, {static_cast<std::uint32_t>(i), c});
    }
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : cols_) n += c.size();
    return n;
  }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    check_same(a, b);
    SparseMatrix r(a.size());
    std::vector<RadicalScalar> acc(a.size());
    std::vector<char> touched(a.size(), 0);
    std::vector<std::uint32_t> rows;
    for (std::size_t j = 0; j < b.size(); ++j) {
      rows.clear();
      for (const auto& [k, bk] : b.cols_[j])
        for (const auto& [i, aik] : a.cols_[k]) {
          if (!touched[i]) {
            touched[i] = 1;
            rows.push_back(i);
          }
          acc[i] += aik * bk;
        }
      std::sort(rows.begin(), rows.end());
      for (auto i : rows) {
        if (!acc[i].is_zero()) r.cols_[j].emplace_back(i, std::move(acc[i]));
        acc[i] = RadicalScalar{};
        touched[i] = 0;
      }
    }
    return r;
  }

  /// Matrix times a sparse vector given as sorted (row, value) entries.
  std::vector<Entry> apply(const std::vector<Entry>& x) const {
    std::map<std::uint32_t, RadicalScalar> acc;
    for (const auto& [k, xk] : x)
      for (const auto& [i, aik] : cols_.at(k)) acc[i] += aik * xk;
    std::vector<Entry> out;
    for (auto& [i, c] : acc)
      if (!c.is_zero()) out.emplace_back(i, std::move(c));
    return out;
  }

  friend SparseMatrix operator+(SparseMatrix a, const SparseMatrix& b) {
    check_same(a, b);
    for (std::size_t j = 0; j < b.size(); ++j)
      for (const auto& [i, c] : b.cols_[j]) a.add(i, j, c);
    return a;
  }

  SparseMatrix scaled(const RadicalScalar& c) const {
    SparseMatrix r(size());
    if (c.is_zero()) return r;
    for (std::size_t j = 0; j < size(); ++j)
      for (const auto& [i, x] : cols_[j]) r.cols_[j].emplace_back(i, x * c);
    return r;
  }

  /// Transpose; all entries are real.
  SparseMatrix adjoint() const {
    SparseMatrix r(size());
    for (std::size_t j = 0; j < size(); ++j)
      for (const auto& [i, c] : cols_[j]) r.cols_[i].emplace_back(static_cast<std::uint32_t>(j), c);
    return r;
  }

  /// Columns j with keep(j) agree.
  template <class Pred>
  bool equal_on(const SparseMatrix& o, Pred keep) const {
    check_same(*this, o);
    for (std::size_t j = 0; j < size(); ++j)
      if (keep(j) && cols_[j] != o.cols_[j]) return false;
    return true;
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) { return a.cols_ == b.cols_; }

  Eigen::MatrixXd to_dense() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(size()), static_cast<Eigen::Index>(size()));
    for (std::size_t j = 0; j < size(); ++j)
      for (const auto& [i, c] : cols_[j]) m(i, static_cast<Eigen::Index>(j)) = c.to_double();
    return m;
  }

 private:
  static void check_same(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.size() != b.size()) throw std::invalid_argument("SparseMatrix: size mismatch");
  }
  std::vector<std::vector<Entry>> cols_;
};

class TruncatedRep {
 public:
  TruncatedRep(const Graph& g, std::size_t depth, std::size_t basis_bound = 200'000)
      : paths_(g, depth, basis_bound), depth_(depth) {
    if (depth < 1) throw std::invalid_argument("TruncatedRep: depth must be >= 1");
    const std::size_t n = paths_.size();
    S_ = SparseMatrix(n);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      SparseMatrix se(n);
      for (PathId a = 0; a < n; ++a)
        if (paths_.length(a) < depth_ && paths_.source(a) == g.dst(e)) se.add(paths_.prepend(e, a), a, 1);
      S_ = S_ + se.scaled(RadicalScalar::inv_sqrt(g.in_degree(g.dst(e))));
      S_e_.push_back(std::move(se));
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      SparseMatrix p(n);
      for (PathId a = 0; a < n; ++a)
        if (paths_.source(a) == v) p.add(a, a, 1);
      P_v_.push_back(std::move(p));
    }
    S_adj_ = S_.adjoint();
  }

  const PathSpace& paths() const noexcept { return paths_; }
  const Graph& graph() const noexcept { return paths_.graph(); }
  std::size_t depth() const noexcept { return depth_; }
  std::size_t dimension() const noexcept { return paths_.size(); }
  const SparseMatrix& S() const noexcept { return S_; }
  const SparseMatrix& S_adjoint() const noexcept { return S_adj_; }
  const SparseMatrix& S_e(EdgeId e) const { return S_e_.at(e); }
  const SparseMatrix& P_v(VertexId v) const { return P_v_.at(v); }

  /// Basis vectors delta_alpha with |alpha| <= len.
  auto window(std::size_t len) const {
    return [this, len](std::size_t j) { return paths_.length(static_cast<PathId>(j)) <= len; };
  }

 private:
  PathSpace paths_;
  std::size_t depth_;
  SparseMatrix S_, S_adj_;
  std::vector<SparseMatrix> S_e_, P_v_;
};

inline TruncatedRep build_rep(const Graph& g, std::size_t depth) { return TruncatedRep(g, depth); }

/// s_mu s_nu^* delta_alpha = delta_{mu alpha'} when alpha = nu alpha'.
inline SparseMatrix pi(const CoreAlgebra& alg, const CoreElement& a, const TruncatedRep& rep) {
  if (a.level > rep.depth()) throw BoundExceeded("pi: element level exceeds the representation depth");
  const PathSpace& ap = alg.paths();
  const PathSpace& rp = rep.paths();
  SparseMatrix m(rep.dimension());
  for (const auto& [k, c] : a.terms) {
    Path mu = ap.path(key_mu(k)), nu = ap.path(key_nu(k));
    PathId mu_id = rp.id_of(mu), nu_id = rp.id_of(nu);
    std::size_t extra = rp.max_length() - mu.length();
    // Extensions alpha' of nu correspond to extensions of mu: both end at r(mu) = r(nu).
    std::vector<std::pair<PathId, PathId>> frontier{{nu_id, mu_id}};
    for (std::size_t step = 0;; ++step) {
      std::vector<std::pair<PathId, PathId>> next;
      for (auto [from, to] : frontier) {
        m.add(to, from, c);
        if (step == extra) continue;
        auto out = rp.graph().out_edges(rp.range(from));
        for (std::size_t j = 0; j < out.size(); ++j) next.emplace_back(rp.append_at(from, j), rp.append_at(to, j));
      }
      if (next.empty()) break;
      frontier = std::move(next);
    }
  }
  return m;
}

/// pi(V(a)) = S pi(a) S^* on the whole space and pi(H(a)) = S^* pi(a) S on
/// |alpha| <= L-1, for every basis element a of F_N.
inline bool oracle_check_VH(const Graph& g, std::size_t level, std::size_t depth) {
  if (level + 1 > depth) throw std::invalid_argument("oracle_check_VH: needs level + 1 <= depth");
  CoreAlgebra alg(g, level + 1);
  TruncatedRep rep(g, depth);
  auto all = [](std::size_t) { return true; };
  for (PairKey k : alg.basis(level)) {
    CoreElement a = alg.basis_element(k, level);
    SparseMatrix pa = pi(alg, a, rep);
    if (!(rep.S() * pa * rep.S_adjoint()).equal_on(pi(alg, alg.V(a), rep), all)) return false;
    if (!(rep.S_adjoint() * pa * rep.S()).equal_on(pi(alg, alg.H(a), rep), rep.window(depth - 1))) return false;
  }
  return true;
}

struct CKWindowResult {
  bool ck1 = true;             // S_e^* S_e = P_{r(e)}
  bool ck2 = true;             // P_v = sum_{s(e)=v} S_e S_e^*, v in s(E^1)
  bool reconstruction = true;  // S_e = sqrt(n_{r(e)}) pi(s_e s_e^*) S
  bool passed() const { return ck1 && ck2 && reconstruction; }
};

/// Relations on the columns selected by `keep` (ck2 additionally skips length 0).
template <class Pred>
CKWindowResult ck_relations(const Graph& g, const TruncatedRep& rep, Pred keep) {
  CoreAlgebra alg(g, 1);
  const PathSpace& rp = rep.paths();
  auto keep2 = [&](std::size_t j) { return keep(j) && rp.length(static_cast<PathId>(j)) >= 1; };
  CKWindowResult r;
  std::vector<SparseMatrix> adj;
  for (EdgeId e = 0; e < g.edge_count(); ++e) adj.push_back(rep.S_e(e).adjoint());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    r.ck1 = r.ck1 && (adj[e] * rep.S_e(e)).equal_on(rep.P_v(g.dst(e)), keep);
    PathId ep = alg.paths().id_of(Path::of_edges(g, {e}));
    SparseMatrix proj = pi(alg, alg.matrix_unit(ep, ep), rep);
    SparseMatrix rec = (proj * rep.S()).scaled(RadicalScalar::sqrt(g.in_degree(g.dst(e))));
    r.reconstruction = r.reconstruction && rec.equal_on(rep.S_e(e), keep);
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.is_sink(v)) continue;
    SparseMatrix sum(rep.dimension());
    for (EdgeId e : g.out_edges(v)) sum = sum + rep.S_e(e) * adj[e];
    r.ck2 = r.ck2 && sum.equal_on(rep.P_v(v), keep2);
  }
  return r;
}

/// Relations on the window |alpha| <= L-1.
inline bool ck_window_check(const Graph& g, std::size_t depth) {
  if (depth < 2) throw std::invalid_argument("ck_window_check: depth must be >= 2");
  TruncatedRep rep(g, depth);
  return ck_relations(g, rep, rep.window(depth - 1)).passed();
}

/// The same relations on every basis vector; fails iff E^{L+1} is nonempty.
inline bool ck_full_space_check(const Graph& g, std::size_t depth) {
  TruncatedRep rep(g, depth);
  return ck_relations(g, rep, [](std::size_t) { return true; }).passed();
}

/// S^n (S^n)^* S^n = S^n on |alpha| <= L-n.
inline bool power_partial_isometry_check(const Graph& g, unsigned n, std::size_t depth) {
  if (n == 0 || n >= depth) throw std::invalid_argument("power_partial_isometry_check: needs 0 < n < depth");
  TruncatedRep rep(g, depth);
  auto keep = rep.window(depth - n);
  for (std::size_t j = 0; j < rep.dimension(); ++j) {
    if (!keep(j)) continue;
    std::vector<SparseMatrix::Entry> x{{static_cast<std::uint32_t>(j), RadicalScalar(1)}};
    for (unsigned i = 0; i < n; ++i) x = rep.S().apply(x);
    auto y = x;
    for (unsigned i = 0; i < n; ++i) y = rep.S_adjoint().apply(y);
    for (unsigned i = 0; i < n; ++i) y = rep.S().apply(y);
    if (y != x) return false;
  }
  return true;
}

/// Smallest eigenvalues of pi(V(b^*b)) and pi(H(b^*b)) for random b in F_N.
struct PositivityReport {
  std::size_t samples = 0;
  double min_eigenvalue = 0;
  bool passed(double tol = 1e-9) const { return min_eigenvalue >= -tol; }
};

inline PositivityReport positivity_spot_check(const Graph& g, std::size_t level, std::size_t samples,
                                              std::uint64_t seed = 1) {
  CoreAlgebra alg(g, level + 1);
  TruncatedRep rep(g, level + 1);
  auto basis = alg.basis(level);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-3, 3);
  PositivityReport r;
  r.min_eigenvalue = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    CoreElement b{level, {}};
    if (!basis.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
      for (int t = 0; t < 4; ++t) b.terms.emplace_back(basis[pick(rng)], RadicalScalar(coef(rng)));
    }
    b.normalize();
    CoreElement bb = alg.mul(adjoint(b), b);
    for (const CoreElement& x : {alg.V(bb), alg.H(bb)}) {
      Eigen::MatrixXd m = pi(alg, x, rep).to_dense();
      if (m.size() == 0) continue;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
      r.min_eigenvalue = std::min(r.min_eigenvalue, es.eigenvalues().minCoeff());
    }
    ++r.samples;
  }
  return r;
}

/// Coordinate list "row col value", one entry per line, columns in order.
inline std::string dump(const SparseMatrix& m) {
  std::ostringstream os;
  for (std::size_t j = 0; j < m.size(); ++j)
    for (const auto& [i, c] : m.column(j)) os << i << ' ' << j << ' ' << c.str() << '\n';
  return os.str();
}

}  // namespace graphint
