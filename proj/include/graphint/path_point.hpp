#pragma once

// Decidable points of the path space: finite paths ending at a sink, and
// eventually periodic infinite paths stored as prefix + repeating cycle.
// Text form: "e1.e2.(e3.e4)*" (lasso), "e1.e2!" (sink path), "!v" (vertex).

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "graphint/errors.hpp"
#include "graphint/graph.hpp"

namespace graphint {

class PathPoint {
 public:
  enum class Kind { SinkPath, Lasso };

  /// A path (possibly of length 0) whose range is a sink.
  static PathPoint sink_path(const Graph& g, Path p) {
    if (!is_path(g, p)) throw std::invalid_argument("sink_path: not a path");
    if (!g.is_sink(p.range(g))) throw std::invalid_argument("sink_path: path does not end at a sink");
    PathPoint x;
    x.kind_ = Kind::SinkPath;
    x.prefix_ = std::move(p);
    return x;
  }

  /// prefix . cycle . cycle ... ; the cycle must be a nonempty closed path starting at r(prefix).
  static PathPoint lasso(const Graph& g, Path prefix, std::vector<EdgeId> cycle) {
    if (cycle.empty()) throw std::invalid_argument("lasso: empty cycle");
    if (!is_path(g, prefix)) throw std::invalid_argument("lasso: prefix is not a path");
    Path c = Path::of_edges(g, cycle);
    if (!is_path(g, c) || c.range(g) != c.start) throw std::invalid_argument("lasso: cycle is not a closed path");
    if (prefix.range(g) != c.start) throw std::invalid_argument("lasso: cycle does not start at the end of the prefix");
    PathPoint x;
    x.kind_ = Kind::Lasso;
    x.prefix_ = std::move(prefix);
    x.cycle_ = std::move(cycle);
    return x;
  }

  /// The periodic point mu mu mu ... for a closed path mu.
  static PathPoint periodic(const Graph& g, const Path& loop) {
    return lasso(g, Path::vertex(loop.start), loop.edges);
  }

  Kind kind() const noexcept { return kind_; }
  bool is_sink_path() const noexcept { return kind_ == Kind::SinkPath; }
  bool is_lasso() const noexcept { return kind_ == Kind::Lasso; }
  /// The sink path itself, or the lasso prefix.
  const Path& prefix() const noexcept { return prefix_; }
  const std::vector<EdgeId>& cycle() const noexcept { return cycle_; }
  VertexId source() const noexcept { return prefix_.start; }
  /// Length of a sink path.
  std::size_t length() const noexcept { return prefix_.length(); }

  /// Edge number k (0-based) of the sequence. Sink paths: k < length().
  EdgeId edge_at(std::size_t k) const {
    if (k < prefix_.length()) return prefix_.edges[k];
    if (is_sink_path()) throw std::out_of_range("edge_at: beyond the end of a sink path");
    return cycle_[(k - prefix_.length()) % cycle_.size()];
  }

  /// Vertex on level m: s(mu) for m = 0, r(mu_m) afterwards.
  VertexId base_vertex(const Graph& g, std::size_t m) const {
    return m == 0 ? source() : g.dst(edge_at(m - 1));
  }

  /// Unrolled form: the cycle is primitive and the prefix does not end with
  /// the cycle's last edge (such an edge is rolled into the cycle).
  PathPoint canonical(const Graph& g) const {
    if (is_sink_path()) return *this;
    std::vector<EdgeId> c = cycle_;
    std::size_t n = c.size();
    for (std::size_t p = 1; p <= n; ++p) {
      if (n % p) continue;
      bool periodic = true;
      for (std::size_t i = p; i < n && periodic; ++i) periodic = c[i] == c[i - p];
      if (periodic) {
        c.resize(p);
        break;
      }
    }
    Path pre = prefix_;
    while (!pre.edges.empty() && pre.edges.back() == c.back()) {
      pre.edges.pop_back();
      std::rotate(c.begin(), c.end() - 1, c.end());
    }
    return lasso(g, std::move(pre), std::move(c));
  }

  friend bool operator==(const PathPoint&, const PathPoint&) = default;

 private:
  PathPoint() = default;
  Kind kind_ = Kind::SinkPath;
  Path prefix_;
  std::vector<EdgeId> cycle_;
};

/// The same infinite (or finite) sequence of edges.
inline bool same_point(const Graph& g, const PathPoint& a, const PathPoint& b) {
  return a.canonical(g) == b.canonical(g);
}

// ---------------------------------------------------------------- text form

inline std::string to_string(const Graph& g, const PathPoint& p) {
  auto names = [&](const std::vector<EdgeId>& es) {
    std::string s;
    for (std::size_t i = 0; i < es.size(); ++i) s += (i ? "." : "") + g.edge(es[i]).name;
    return s;
  };
  if (p.is_sink_path()) {
    if (p.prefix().edges.empty()) return "!" + g.vertex_name(p.source());
    return names(p.prefix().edges) + "!";
  }
  std::string pre = names(p.prefix().edges);
  return (pre.empty() ? "" : pre + ".") + "(" + names(p.cycle()) + ")*";
}

inline PathPoint parse_path_point(const Graph& g, std::string_view text) {
  std::string_view t = detail::trim(text);
  auto edges_of = [&](std::string_view s) {
    std::vector<EdgeId> es;
    if (s.empty()) return es;
    std::size_t pos = 0;
    while (true) {
      std::size_t dot = s.find('.', pos);
      std::string_view name = s.substr(pos, dot == std::string_view::npos ? std::string_view::npos : dot - pos);
      auto e = g.find_edge(name);
      if (!e) throw ParseError("unknown edge '" + std::string(name) + "'");
      es.push_back(*e);
      if (dot == std::string_view::npos) break;
      pos = dot + 1;
    }
    return es;
  };
  try {
    if (t.empty()) throw ParseError("empty path point");
    if (t.front() == '!') {
      auto v = g.find_vertex(t.substr(1));
      if (!v) throw ParseError("unknown vertex '" + std::string(t.substr(1)) + "'");
      return PathPoint::sink_path(g, Path::vertex(*v));
    }
    if (t.back() == '!') {
      auto es = edges_of(t.substr(0, t.size() - 1));
      if (es.empty()) throw ParseError("sink path without edges; use !v for a vertex");
      return PathPoint::sink_path(g, Path::of_edges(g, es));
    }
    std::size_t open = t.find('(');
    if (open == std::string_view::npos || t.size() < 3 || t.substr(t.size() - 2) != ")*")
      throw ParseError("expected 'prefix.(cycle)*', 'path!' or '!vertex'");
    std::string_view pre = t.substr(0, open);
    if (!pre.empty()) {
      if (pre.back() != '.') throw ParseError("missing '.' before the cycle");
      pre.remove_suffix(1);
    }
    auto cyc = edges_of(t.substr(open + 1, t.size() - open - 3));
    if (cyc.empty()) throw ParseError("empty cycle");
    auto pes = edges_of(pre);
    Path prefix = pes.empty() ? Path::vertex(g.src(cyc.front())) : Path::of_edges(g, pes);
    return PathPoint::lasso(g, std::move(prefix), std::move(cyc));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

// ---------------------------------------------------------------- shift and classes

/// Drops the first edge; a length-1 sink path becomes its range vertex.
inline PathPoint shift(const Graph& g, const PathPoint& p) {
  if (p.is_sink_path()) {
    if (p.length() == 0) throw std::domain_error("shift: a sink vertex is outside the domain");
    Path rest{g.dst(p.prefix().edges.front()), {p.prefix().edges.begin() + 1, p.prefix().edges.end()}};
    return PathPoint::sink_path(g, std::move(rest));
  }
  if (!p.prefix().edges.empty()) {
    const auto& es = p.prefix().edges;
    return PathPoint::lasso(g, Path{g.dst(es.front()), {es.begin() + 1, es.end()}}, p.cycle());
  }
  std::vector<EdgeId> c = p.cycle();
  std::rotate(c.begin(), c.begin() + 1, c.end());
  VertexId start = g.src(c.front());
  return PathPoint::lasso(g, Path::vertex(start), std::move(c));
}

/// Eventual equality with index alignment. Lassos: compared on positions
/// [M, M + lcm(p, q)) with M the longer prefix; past M both words are
/// periodic with period lcm(p, q), so agreement there is agreement forever.
/// Sink paths: equal length and equal range. Mixed kinds never agree.
inline bool eventually_equal(const Graph& g, const PathPoint& a, const PathPoint& b) {
  if (a.kind() != b.kind()) return false;
  if (a.is_sink_path()) return a.length() == b.length() && a.prefix().range(g) == b.prefix().range(g);
  std::size_t m = std::max(a.prefix().length(), b.prefix().length());
  std::size_t l = std::lcm(a.cycle().size(), b.cycle().size());
  for (std::size_t k = m; k < m + l; ++k)
    if (a.edge_at(k) != b.edge_at(k)) return false;
  return true;
}

/// An equivalence class under eventual equality, held by its canonical representative:
/// for lassos the purely periodic point with the same index-aligned tail, for sink
/// paths the lexicographically least path of the same length into the same sink.
class QuotientClass {
 public:
  static QuotientClass of(const Graph& g, const PathPoint& p) {
    if (p.is_lasso()) {
      PathPoint c = p.canonical(g);
      std::vector<EdgeId> cyc = c.cycle();
      std::size_t shift_by = c.prefix().length() % cyc.size();
      std::rotate(cyc.begin(), cyc.end() - static_cast<std::ptrdiff_t>(shift_by), cyc.end());
      VertexId start = g.src(cyc.front());
      return QuotientClass(PathPoint::lasso(g, Path::vertex(start), std::move(cyc)));
    }
    return QuotientClass(PathPoint::sink_path(g, least_path_into(g, p.prefix().range(g), p.length())));
  }

  const PathPoint& representative() const noexcept { return rep_; }
  friend bool operator==(const QuotientClass&, const QuotientClass&) = default;

  /// Lexicographically least edge sequence of the given length ending at w.
  static Path least_path_into(const Graph& g, VertexId w, std::size_t len) {
    // reach[k][v]: some path of length k runs from v to w.
    std::vector<std::vector<char>> reach(len + 1, std::vector<char>(g.vertex_count(), 0));
    reach[0][w] = 1;
    for (std::size_t k = 1; k <= len; ++k)
      for (const auto& e : g.edges())
        if (reach[k - 1][e.dst]) reach[k][e.src] = 1;
    if (len == 0) return Path::vertex(w);
    Path p;
    bool first = true;
    for (std::size_t k = len; k >= 1; --k) {
      std::optional<EdgeId> best;
      for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (!first && g.src(e) != p.range(g)) continue;
        if (reach[k - 1][g.dst(e)]) {
          best = e;
          break;
        }
      }
      if (!best) throw std::logic_error("least_path_into: no path of the requested length");
      if (first) p.start = g.src(*best);
      p.edges.push_back(*best);
      first = false;
    }
    return p;
  }

 private:
  explicit QuotientClass(PathPoint p) : rep_(std::move(p)) {}
  PathPoint rep_;
};

/// [e mu] for the least-id edge e with r(e) = s(mu); undefined on points starting at a source.
inline QuotientClass shift_inverse_class(const Graph& g, const QuotientClass& c, std::optional<EdgeId> via = {}) {
  const PathPoint& p = c.representative();
  VertexId s = p.source();
  if (g.is_source(s)) throw std::domain_error("shift_inverse_class: class starts at a source");
  EdgeId e = via ? *via : g.in_edges(s).front();
  if (g.dst(e) != s) throw std::invalid_argument("shift_inverse_class: edge does not end at the start vertex");
  std::vector<EdgeId> es{e};
  es.insert(es.end(), p.prefix().edges.begin(), p.prefix().edges.end());
  Path pre{g.src(e), std::move(es)};
  if (p.is_sink_path()) return QuotientClass::of(g, PathPoint::sink_path(g, std::move(pre)));
  return QuotientClass::of(g, PathPoint::lasso(g, std::move(pre), p.cycle()));
}

inline QuotientClass shift_class(const Graph& g, const QuotientClass& c) {
  return QuotientClass::of(g, shift(g, c.representative()));
}

}  // namespace graphint
