#pragma once

// Interned finite paths. Ids 0..|E^0|-1 are the length-0 paths (vertices);
// longer paths follow in (length, lexicographic edge id) order. Every table
// the core algebra and the representation need is precomputed here, so the
// hot loops work on integers only.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "graphint/errors.hpp"
#include "graphint/graph.hpp"

namespace graphint {

using PathId = std::uint32_t;
inline constexpr PathId kNoPath = std::numeric_limits<PathId>::max();

class PathSpace {
 public:
  static constexpr std::size_t kDefaultPathBound = 4'000'000;

  PathSpace(Graph g, std::size_t max_length, std::size_t path_bound = kDefaultPathBound)
      : g_(std::move(g)), max_length_(max_length) {
    const std::size_t nv = g_.vertex_count();
    level_begin_.push_back(0);
    for (std::size_t v = 0; v < nv; ++v) add(static_cast<VertexId>(v), static_cast<VertexId>(v), 0, kNoEdge, kNoEdge, kNoPath, kNoPath);
    level_begin_.push_back(size());
    for (std::size_t len = 1; len <= max_length_; ++len) {
      if (len == 1) {
        for (EdgeId e = 0; e < g_.edge_count(); ++e) {
          add(g_.src(e), g_.dst(e), 1, e, e, g_.dst(e), g_.src(e));
          check_bound(path_bound);
        }
      } else {
        for (PathId p = level_begin_[len - 1]; p < level_begin_[len]; ++p) {
          first_child_[p] = static_cast<PathId>(size());
          auto out = g_.out_edges(range_[p]);
          for (std::size_t j = 0; j < out.size(); ++j) {
            // tail(p.e) = tail(p).e, already interned one level down.
            add(source_[p], g_.dst(out[j]), static_cast<std::uint32_t>(len), first_[p], out[j], child(tail_[p], j), p);
            check_bound(path_bound);
          }
        }
      }
      level_begin_.push_back(size());
    }
    build_adjacency_tables();
  }

  const Graph& graph() const noexcept { return g_; }
  std::size_t max_length() const noexcept { return max_length_; }
  std::size_t size() const noexcept { return source_.size(); }

  std::uint32_t length(PathId p) const { return length_[p]; }
  VertexId source(PathId p) const { return source_[p]; }
  VertexId range(PathId p) const { return range_[p]; }
  /// First / last edge; kNoEdge for vertices.
  EdgeId first_edge(PathId p) const { return first_[p]; }
  EdgeId last_edge(PathId p) const { return last_[p]; }
  /// Path without its first edge (a vertex for length 1); kNoPath for vertices.
  PathId tail(PathId p) const { return tail_[p]; }
  /// Path without its last edge; kNoPath for vertices.
  PathId init(PathId p) const { return init_[p]; }

  PathId vertex(VertexId v) const { return v; }

  /// All ids of the given length, a contiguous range.
  std::pair<PathId, PathId> of_length(std::size_t len) const {
    if (len > max_length_) throw BoundExceeded("path length " + std::to_string(len) + " beyond interned maximum");
    return {level_begin_[len], level_begin_[len + 1]};
  }
  /// Ids of length `len` ending at v, ascending.
  std::span<const PathId> ending_at(std::size_t len, VertexId v) const {
    if (len > max_length_) throw BoundExceeded("path length " + std::to_string(len) + " beyond interned maximum");
    return by_range_[len * g_.vertex_count() + v];
  }

  /// Id of e.p, or kNoPath if r(e) != s(p). Throws past the maximum length.
  PathId prepend(EdgeId e, PathId p) const {
    if (g_.dst(e) != source_[p]) return kNoPath;
    auto in = g_.in_edges(source_[p]);
    for (std::size_t j = 0; j < in.size(); ++j)
      if (in[j] == e) return prepend_at(p, j);
    return kNoPath;
  }
  /// Id of in_edges(s(p))[j] . p.
  PathId prepend_at(PathId p, std::size_t j) const {
    if (length_[p] >= max_length_) throw BoundExceeded("prepend beyond interned maximum length");
    return prepend_[prepend_off_[p] + j];
  }
  /// Id of p.e, or kNoPath if s(e) != r(p).
  PathId append(PathId p, EdgeId e) const {
    if (g_.src(e) != range_[p]) return kNoPath;
    auto out = g_.out_edges(range_[p]);
    for (std::size_t j = 0; j < out.size(); ++j)
      if (out[j] == e) return append_at(p, j);
    return kNoPath;
  }
  /// Id of p . out_edges(r(p))[j].
  PathId append_at(PathId p, std::size_t j) const {
    if (length_[p] >= max_length_) throw BoundExceeded("append beyond interned maximum length");
    return child(p, j);
  }

  /// Id of a validated path.
  PathId id_of(const Path& path) const {
    if (path.start >= g_.vertex_count()) throw std::out_of_range("path start out of range");
    PathId p = path.start;
    if (!path.edges.empty()) {
      if (g_.src(path.edges.front()) != path.start) throw std::invalid_argument("path start does not match first edge");
    }
    for (EdgeId e : path.edges) {
      if (length_[p] >= max_length_) throw BoundExceeded("path longer than interned maximum");
      p = append(p, e);
      if (p == kNoPath) throw std::invalid_argument("not a path");
    }
    return p;
  }

  Path path(PathId p) const {
    Path out{source_[p], {}};
    out.edges.resize(length_[p]);
    for (PathId q = p; length_[q] > 0; q = init_[q]) out.edges[length_[q] - 1] = last_[q];
    return out;
  }

  std::string name(PathId p) const { return path_to_string(g_, path(p)); }

  /// p is a prefix of q.
  bool is_prefix(PathId p, PathId q) const {
    if (length_[p] > length_[q] || source_[p] != source_[q]) return false;
    while (length_[q] > length_[p]) q = init_[q];
    return p == q;
  }

  static constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();

 private:
  PathId child(PathId p, std::size_t j) const {
    if (length_[p] == 0) return static_cast<PathId>(g_.vertex_count() + g_.out_edges(p)[j]);
    return first_child_[p] + static_cast<PathId>(j);
  }

  void add(VertexId s, VertexId r, std::uint32_t len, EdgeId first, EdgeId last, PathId tail, PathId init) {
    source_.push_back(s);
    range_.push_back(r);
    length_.push_back(len);
    first_.push_back(first);
    last_.push_back(last);
    tail_.push_back(tail);
    init_.push_back(init);
    first_child_.push_back(kNoPath);
  }

  void check_bound(std::size_t bound) const {
    if (size() > bound)
      throw BoundExceeded("path space exceeds " + std::to_string(bound) + " paths (max length " +
                          std::to_string(max_length_) + ")");
  }

  // Children of a path are contiguous and in out-edge order, so appends need
  // no table. Prepends are read off the tail links.
  void build_adjacency_tables() {
    const std::size_t n = size(), nv = g_.vertex_count();
    prepend_off_.assign(n + 1, 0);
    for (std::size_t p = 0; p < n; ++p)
      prepend_off_[p + 1] = prepend_off_[p] + (length_[p] < max_length_ ? g_.in_degree(source_[p]) : 0);
    prepend_.assign(prepend_off_[n], kNoPath);
    for (std::size_t q = nv; q < n; ++q) {
      PathId t = tail_[q];
      auto in = g_.in_edges(source_[t]);
      for (std::size_t j = 0; j < in.size(); ++j)
        if (in[j] == first_[q]) prepend_[prepend_off_[t] + j] = static_cast<PathId>(q);
    }
    by_range_.assign((max_length_ + 1) * nv, {});
    for (std::size_t p = 0; p < n; ++p) by_range_[length_[p] * nv + range_[p]].push_back(static_cast<PathId>(p));
  }

  Graph g_;
  std::size_t max_length_;
  std::vector<VertexId> source_, range_;
  std::vector<std::uint32_t> length_;
  std::vector<EdgeId> first_, last_;
  std::vector<PathId> tail_, init_, first_child_;
  std::vector<PathId> level_begin_;
  std::vector<std::size_t> prepend_off_;
  std::vector<PathId> prepend_;
  std::vector<std::vector<PathId>> by_range_;
};

}  // namespace graphint
