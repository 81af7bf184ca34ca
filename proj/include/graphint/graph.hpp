#pragma once

// Finite directed multigraphs E = (E^0, E^1, r, s).
//
// Orientation convention: n_v counts the edges *received* by v (in-degree),
// and the Cuntz-Krieger relations read S_e^* S_e = P_{r(e)}. A path
// mu = mu_1 ... mu_n composes left to right: r(mu_i) = s(mu_{i+1}).
// Many graph-algebra texts use the opposite orientation; every matrix and
// formula in this library follows the convention above.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "graphint/errors.hpp"

namespace graphint {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
  std::string name;
  VertexId src;
  VertexId dst;
};

inline bool is_valid_name(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
}

class Graph {
 public:
  Graph() = default;

  /// Validates names, endpoints and uniqueness. Edge names may be empty, in
  /// which case "e<k>" (1-based edge index) is assigned.
  Graph(std::vector<std::string> vertices, std::vector<Edge> edges)
      : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (!is_valid_name(vertices_[i]))
        throw std::invalid_argument("invalid vertex name '" + vertices_[i] + "'");
      if (!vertex_index_.emplace(vertices_[i], VertexId(i)).second)
        throw std::invalid_argument("duplicate vertex '" + vertices_[i] + "'");
    }
    out_.resize(vertices_.size());
    in_.resize(vertices_.size());
    for (std::size_t k = 0; k < edges_.size(); ++k) {
      Edge& e = edges_[k];
      if (e.name.empty()) e.name = "e" + std::to_string(k + 1);
      if (!is_valid_name(e.name)) throw std::invalid_argument("invalid edge name '" + e.name + "'");
      if (e.src >= vertices_.size() || e.dst >= vertices_.size())
        throw std::invalid_argument("edge '" + e.name + "' has an undeclared endpoint");
      if (!edge_index_.emplace(e.name, EdgeId(k)).second)
        throw std::invalid_argument("duplicate edge id '" + e.name + "'");
      out_[e.src].push_back(EdgeId(k));
      in_[e.dst].push_back(EdgeId(k));
    }
  }

  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const std::string& vertex_name(VertexId v) const { return vertices_.at(v); }
  const std::vector<std::string>& vertex_names() const noexcept { return vertices_; }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::optional<VertexId> find_vertex(std::string_view name) const {
    auto it = vertex_index_.find(std::string(name));
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<EdgeId> find_edge(std::string_view name) const {
    auto it = edge_index_.find(std::string(name));
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
  }
  VertexId vertex(std::string_view name) const {
    if (auto v = find_vertex(name)) return *v;
    throw std::invalid_argument("unknown vertex '" + std::string(name) + "'");
  }

  VertexId src(EdgeId e) const { return edges_.at(e).src; }
  VertexId dst(EdgeId e) const { return edges_.at(e).dst; }

  /// Edges with s(e) = v, in edge order.
  std::span<const EdgeId> out_edges(VertexId v) const { return out_.at(v); }
  /// Edges with r(e) = v, in edge order.
  std::span<const EdgeId> in_edges(VertexId v) const { return in_.at(v); }

  /// n_v = |r^{-1}(v)|.
  std::size_t in_degree(VertexId v) const { return in_.at(v).size(); }
  std::size_t out_degree(VertexId v) const { return out_.at(v).size(); }

  bool is_sink(VertexId v) const { return out_.at(v).empty(); }
  bool is_source(VertexId v) const { return in_.at(v).empty(); }

  std::vector<VertexId> sinks() const { return select([&](VertexId v) { return is_sink(v); }); }
  std::vector<VertexId> sources() const { return select([&](VertexId v) { return is_source(v); }); }

  friend bool operator==(const Graph& a, const Graph& b) {
    if (a.vertices_ != b.vertices_ || a.edges_.size() != b.edges_.size()) return false;
    for (std::size_t k = 0; k < a.edges_.size(); ++k) {
      const Edge &x = a.edges_[k], &y = b.edges_[k];
      if (x.name != y.name || x.src != y.src || x.dst != y.dst) return false;
    }
    return true;
  }

 private:
  template <class Pred>
  std::vector<VertexId> select(Pred pred) const {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < vertices_.size(); ++v)
      if (pred(v)) out.push_back(v);
    return out;
  }

  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::map<std::string, VertexId, std::less<>> vertex_index_;
  std::map<std::string, EdgeId, std::less<>> edge_index_;
  std::vector<std::vector<EdgeId>> out_, in_;
};

/// A finite path. Length-0 paths are vertices and carry only `start`.
/// For non-empty paths `start` is s(edges.front()).
struct Path {
  VertexId start = 0;
  std::vector<EdgeId> edges;

  std::size_t length() const noexcept { return edges.size(); }
  bool empty() const noexcept { return edges.empty(); }

  VertexId source() const noexcept { return start; }
  VertexId range(const Graph& g) const { return edges.empty() ? start : g.dst(edges.back()); }

  static Path vertex(VertexId v) { return Path{v, {}}; }
  static Path of_edges(const Graph& g, std::vector<EdgeId> es) {
    if (es.empty()) throw std::invalid_argument("use Path::vertex for length-0 paths");
    VertexId s = g.src(es.front());
    return Path{s, std::move(es)};
  }

  friend auto operator<=>(const Path& a, const Path& b) {
    if (auto c = a.edges.size() <=> b.edges.size(); c != 0) return c;
    if (auto c = a.edges <=> b.edges; c != 0) return c;
    return a.start <=> b.start;
  }
  friend bool operator==(const Path& a, const Path& b) = default;
};

/// True iff consecutive edges compose (r(mu_i) = s(mu_{i+1})) and start matches.
inline bool is_path(const Graph& g, const Path& p) {
  if (p.start >= g.vertex_count()) return false;
  VertexId at = p.start;
  for (EdgeId e : p.edges) {
    if (e >= g.edge_count() || g.src(e) != at) return false;
    at = g.dst(e);
  }
  return true;
}

inline std::string path_to_string(const Graph& g, const Path& p) {
  if (p.empty()) return g.vertex_name(p.start);
  std::string out;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    if (i) out += '.';
    out += g.edge(p.edges[i]).name;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text and JSON graph formats.
//
// Text: one statement per line, `vertex <name>` or `<name> -> <name>`;
// names match [A-Za-z0-9_]+; `#` starts a comment; repeated edge lines are
// parallel edges. Vertices are indexed in order of first mention.
//
// JSON: {"vertices": [...], "edges": [{"src": ..., "dst": ..., "id": ...}]}
// where "id" is optional.

struct ParseOptions {
  /// Reject edges whose endpoints were not declared with `vertex`.
  bool strict = false;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

class GraphBuilder {
 public:
  explicit GraphBuilder(ParseOptions opts) : opts_(opts) {}

  void declare(std::string_view name, std::size_t line) {
    if (!is_valid_name(name)) throw ParseError("invalid vertex name '" + std::string(name) + "'", line);
    if (declared_.count(std::string(name)))
      throw ParseError("duplicate vertex declaration '" + std::string(name) + "'", line);
    declared_.emplace(name, true);
    intern(name);
  }

  void edge(std::string_view src, std::string_view dst, std::string id, std::size_t line) {
    for (auto name : {src, dst}) {
      if (!is_valid_name(name)) throw ParseError("invalid vertex name '" + std::string(name) + "'", line);
      if (opts_.strict && !declared_.count(std::string(name)))
        throw ParseError("undeclared vertex '" + std::string(name) + "'", line);
    }
    VertexId s = intern(src);
    VertexId d = intern(dst);
    edges_.push_back(Edge{std::move(id), s, d});
  }

  Graph build(std::size_t line = 0) && {
    try {
      return Graph(std::move(names_), std::move(edges_));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), line);
    }
  }

 private:
  VertexId intern(std::string_view name) {
    auto [it, inserted] = index_.emplace(std::string(name), VertexId(names_.size()));
    if (inserted) names_.emplace_back(name);
    return it->second;
  }

  ParseOptions opts_;
  std::map<std::string, VertexId, std::less<>> index_;
  std::map<std::string, bool, std::less<>> declared_;
  std::vector<std::string> names_;
  std::vector<Edge> edges_;
};

}  // namespace detail

inline Graph parse_graph_text(std::string_view text, ParseOptions opts = {}) {
  detail::GraphBuilder b(opts);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;

    auto arrow = line.find("->");
    if (arrow == std::string_view::npos && line.starts_with("vertex") && line.size() > 6 &&
        std::isspace(static_cast<unsigned char>(line[6]))) {
      b.declare(detail::trim(line.substr(6)), line_no);
      continue;
    }
    if (arrow == std::string_view::npos)
      throw ParseError("expected 'vertex <name>' or '<name> -> <name>', got '" + std::string(line) + "'", line_no);
    auto lhs = detail::trim(line.substr(0, arrow));
    auto rhs = detail::trim(line.substr(arrow + 2));
    if (lhs.empty() || rhs.empty()) throw ParseError("edge is missing an endpoint", line_no);
    b.edge(lhs, rhs, "", line_no);
  }
  return std::move(b).build();
}

inline Graph parse_graph_json(std::string_view text, ParseOptions opts = {}) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("graph JSON must be an object");
  detail::GraphBuilder b(opts);
  try {
    if (j.contains("vertices")) {
      for (const auto& v : j.at("vertices")) b.declare(v.get<std::string>(), 0);
    }
    if (j.contains("edges")) {
      for (const auto& e : j.at("edges")) {
        std::string id = e.contains("id") ? e.at("id").get<std::string>() : "";
        b.edge(e.at("src").get<std::string>(), e.at("dst").get<std::string>(), std::move(id), 0);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad graph JSON: ") + e.what());
  }
  return std::move(b).build();
}

/// Dispatches on the first non-blank character: '{' selects JSON.
inline Graph parse_graph(std::string_view text, ParseOptions opts = {}) {
  auto t = detail::trim(text);
  if (!t.empty() && t.front() == '{') return parse_graph_json(text, opts);
  return parse_graph_text(text, opts);
}

/// Every vertex is declared up front, so the output re-parses (strict or not)
/// to the same vertex order and edge multiset.
inline std::string to_text(const Graph& g) {
  std::ostringstream out;
  for (const auto& v : g.vertex_names()) out << "vertex " << v << '\n';
  for (const auto& e : g.edges()) out << g.vertex_name(e.src) << " -> " << g.vertex_name(e.dst) << '\n';
  return out.str();
}

inline nlohmann::ordered_json to_json(const Graph& g) {
  nlohmann::ordered_json j;
  j["vertices"] = g.vertex_names();
  auto edges = nlohmann::ordered_json::array();
  for (const auto& e : g.edges())
    edges.push_back({{"id", e.name}, {"src", g.vertex_name(e.src)}, {"dst", g.vertex_name(e.dst)}});
  j["edges"] = std::move(edges);
  return j;
}

}  // namespace graphint
