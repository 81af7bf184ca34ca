#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "graphint/dynamics.hpp"
#include "oracles.hpp"

using namespace graphint;

namespace {

PathPoint pp(const Graph& g, const char* s) { return parse_path_point(g, s); }

// Boolean powers of the adjacency relation, brute force up to a fixed horizon.
std::vector<std::vector<std::vector<char>>> reach_table(const Graph& g, std::size_t horizon) {
  std::size_t n = g.vertex_count();
  std::vector<std::vector<std::vector<char>>> t(horizon + 1, std::vector<std::vector<char>>(n, std::vector<char>(n, 0)));
  for (std::size_t v = 0; v < n; ++v) t[0][v][v] = 1;
  for (std::size_t k = 1; k <= horizon; ++k)
    for (std::size_t a = 0; a < n; ++a)
      for (const auto& e : g.edges())
        if (t[k - 1][a][e.src]) t[k][a][e.dst] = 1;
  return t;
}

bool basis_set_oracle(const Graph& g, const PathPoint& p, VertexId v, std::size_t n, std::size_t horizon) {
  auto t = reach_table(g, horizon);
  for (std::size_t k = 0; k <= horizon; ++k) {
    if (p.is_sink_path() && n + k > p.length()) break;
    if (t[k][v][p.base_vertex(g, n + k)]) return true;
  }
  return false;
}

// Random lasso: a simple loop rotated at random, entered through a random backward walk.
std::optional<PathPoint> random_lasso(const Graph& g, std::mt19937_64& rng) {
  auto loops = simple_loops(g);
  if (loops.empty()) return std::nullopt;
  Path loop = loops[std::uniform_int_distribution<std::size_t>(0, loops.size() - 1)(rng)];
  std::vector<EdgeId> c = loop.edges;
  std::rotate(c.begin(), c.begin() + std::uniform_int_distribution<std::size_t>(0, c.size() - 1)(rng), c.end());
  if (rng() % 3 == 0) c.insert(c.end(), c.begin(), c.end());
  std::vector<EdgeId> pre;
  VertexId at = g.src(c.front());
  for (int i = std::uniform_int_distribution<int>(0, 4)(rng); i > 0; --i) {
    auto in = g.in_edges(at);
    if (in.empty()) break;
    EdgeId e = in[rng() % in.size()];
    pre.insert(pre.begin(), e);
    at = g.src(e);
  }
  return PathPoint::lasso(g, pre.empty() ? Path::vertex(at) : Path::of_edges(g, pre), c);
}

std::optional<PathPoint> random_sink_path(const Graph& g, std::mt19937_64& rng) {
  auto sinks = g.sinks();
  if (sinks.empty()) return std::nullopt;
  VertexId at = sinks[rng() % sinks.size()];
  std::vector<EdgeId> es;
  for (int i = std::uniform_int_distribution<int>(0, 4)(rng); i > 0; --i) {
    auto in = g.in_edges(at);
    if (in.empty()) break;
    EdgeId e = in[rng() % in.size()];
    es.insert(es.begin(), e);
    at = g.src(e);
  }
  return PathPoint::sink_path(g, es.empty() ? Path::vertex(at) : Path::of_edges(g, es));
}

std::vector<PathPoint> random_points(const Graph& g, std::mt19937_64& rng, int count) {
  std::vector<PathPoint> out;
  for (int i = 0; i < count; ++i) {
    auto p = (i % 2) ? random_sink_path(g, rng) : random_lasso(g, rng);
    if (p) out.push_back(*p);
  }
  return out;
}

}  // namespace

TEST(PathPoints, ParseAndPrint) {
  Graph g = fixtures::two_cycle();
  for (const char* s : {"(e1.e2)*", "e1.(e2.e1)*", "e2.e1.(e2.e1)*"}) EXPECT_EQ(to_string(g, pp(g, s)), s);
  Graph h = fixtures::single_edge();
  EXPECT_EQ(to_string(h, pp(h, "e1!")), "e1!");
  EXPECT_EQ(to_string(h, pp(h, "!w")), "!w");
  for (const char* bad : {"", "e3!", "(e1)*", "!v", "e1.(e1)*", "()*", "e1.e2", "!"}) EXPECT_THROW(pp(g, bad), ParseError) << bad;
  EXPECT_THROW(pp(h, "!v"), ParseError);
}

TEST(PathPoints, CanonicalForm) {
  Graph g = fixtures::two_cycle();
  EXPECT_EQ(to_string(g, pp(g, "e1.(e2.e1)*").canonical(g)), "(e1.e2)*");
  EXPECT_EQ(to_string(g, pp(g, "(e1.e2.e1.e2)*").canonical(g)), "(e1.e2)*");
  EXPECT_TRUE(same_point(g, pp(g, "e1.e2.(e1.e2)*"), pp(g, "(e1.e2)*")));
  EXPECT_FALSE(same_point(g, pp(g, "(e2.e1)*"), pp(g, "(e1.e2)*")));
}

TEST(PathPoints, ShiftExamples) {
  Graph g = fixtures::two_cycle();
  EXPECT_EQ(to_string(g, shift(g, pp(g, "e1.(e2.e1)*")).canonical(g)), "(e2.e1)*");
  EXPECT_EQ(to_string(g, shift(g, pp(g, "(e1.e2)*"))), "(e2.e1)*");
  Graph h = fixtures::chain();
  EXPECT_EQ(to_string(h, shift(h, pp(h, "e1.e2!"))), "e2!");
  EXPECT_EQ(to_string(h, shift(h, pp(h, "e2!"))), "!w");
  EXPECT_THROW(shift(h, pp(h, "!w")), std::domain_error);
}

TEST(PathPoints, EventualEquality) {
  Graph g = fixtures::loops(2);
  EXPECT_TRUE(eventually_equal(g, pp(g, "e1.(e2)*"), pp(g, "e2.(e2)*")));
  EXPECT_FALSE(eventually_equal(g, pp(g, "(e1.e2)*"), pp(g, "e1.(e1.e2)*")));
  EXPECT_TRUE(eventually_equal(g, pp(g, "e1.e1.(e1.e2)*"), pp(g, "(e1.e2)*")));
  Graph c = fixtures::chain_with_source();
  EXPECT_TRUE(eventually_equal(c, pp(c, "e1.e2!"), pp(c, "e1.e2!")));
  EXPECT_FALSE(eventually_equal(c, pp(c, "e2!"), pp(c, "e1.e2!")));
  EXPECT_TRUE(eventually_equal(c, pp(c, "e2!"), pp(c, "e3!")));
}

TEST(PathPointsProperty, EquivalenceAgainstLongWindowOracle) {
  std::mt19937_64 rng(41);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Graph g = fixtures::random_graph(seed, 4, 7, 2);
    auto pts = random_points(g, rng, 8);
    for (const auto& a : pts) {
      EXPECT_TRUE(eventually_equal(g, a, a));
      EXPECT_TRUE(same_point(g, a, a.canonical(g)));
      EXPECT_EQ(a.canonical(g).canonical(g), a.canonical(g));
      EXPECT_TRUE(same_point(g, a, pp(g, to_string(g, a).c_str())));
      for (const auto& b : pts) {
        bool ev = eventually_equal(g, a, b);
        EXPECT_EQ(ev, eventually_equal(g, b, a));
        EXPECT_EQ(ev, QuotientClass::of(g, a) == QuotientClass::of(g, b));
        bool oracle;
        if (a.kind() != b.kind()) {
          oracle = false;
        } else if (a.is_sink_path()) {
          oracle = a.length() == b.length() && a.prefix().range(g) == b.prefix().range(g);
        } else {
          oracle = true;
          for (std::size_t k = 40; k < 120; ++k) oracle = oracle && a.edge_at(k) == b.edge_at(k);
        }
        EXPECT_EQ(ev, oracle) << to_string(g, a) << " vs " << to_string(g, b);
        for (const auto& c : pts)
          if (ev && eventually_equal(g, b, c)) EXPECT_TRUE(eventually_equal(g, a, c));
      }
    }
  }
}

TEST(Classes, ShiftAndInverse) {
  Graph g = fixtures::two_cycle();
  QuotientClass c = QuotientClass::of(g, pp(g, "(e1.e2)*"));
  QuotientClass s = shift_class(g, c);
  EXPECT_EQ(s, QuotientClass::of(g, pp(g, "(e2.e1)*")));
  EXPECT_EQ(shift_inverse_class(g, s), c);
  Graph h = fixtures::chain_with_source();
  QuotientClass w = QuotientClass::of(h, pp(h, "!w"));
  EXPECT_EQ(shift_inverse_class(h, w), QuotientClass::of(h, pp(h, "e3!")));
  EXPECT_EQ(shift_inverse_class(h, w, h.find_edge("e3")), QuotientClass::of(h, pp(h, "e2!")));
  EXPECT_THROW(shift_inverse_class(h, QuotientClass::of(h, pp(h, "e1.e2!"))), std::domain_error);
  EXPECT_THROW(shift_inverse_class(h, w, h.find_edge("e1")), std::invalid_argument);
}

TEST(ClassesProperty, ShiftOfInverseIsIdentity) {
  std::mt19937_64 rng(8);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Graph g = fixtures::random_graph(seed, 4, 7, 2);
    for (const auto& p : random_points(g, rng, 6)) {
      QuotientClass c = QuotientClass::of(g, p);
      VertexId start = c.representative().source();
      if (g.is_source(start)) continue;
      for (EdgeId e : g.in_edges(start)) {
        QuotientClass up = shift_inverse_class(g, c, e);
        EXPECT_EQ(shift_class(g, up), QuotientClass::of(g, p)) << to_string(g, p);
      }
    }
  }
}

TEST(BasisSets, Examples) {
  Graph g = fixtures::chain_with_source();
  QuotientClass c = QuotientClass::of(g, pp(g, "e1.e2!"));
  EXPECT_TRUE(in_basis_set(g, c, g.vertex("u"), 0));
  EXPECT_TRUE(in_basis_set(g, c, g.vertex("v"), 1));
  EXPECT_FALSE(in_basis_set(g, c, g.vertex("w"), 1));
  EXPECT_TRUE(in_basis_set(g, c, g.vertex("w"), 2));
  EXPECT_FALSE(in_basis_set(g, c, g.vertex("x"), 0));
  EXPECT_THROW(in_basis_set(g, c, g.vertex("u"), 1), std::invalid_argument);
  EXPECT_THROW(in_basis_set(g, c, g.vertex("x"), 1), std::invalid_argument);

  Graph t = fixtures::two_cycle();
  QuotientClass a = QuotientClass::of(t, pp(t, "(e1.e2)*"));
  EXPECT_TRUE(in_basis_set(t, a, t.vertex("v"), 0));
  EXPECT_FALSE(in_basis_set(t, a, t.vertex("w"), 0));
  EXPECT_TRUE(in_basis_set(t, a, t.vertex("w"), 5));
}

TEST(BasisSetsProperty, AgreeWithReachabilityOracleAndShift) {
  std::mt19937_64 rng(12);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Graph g = fixtures::random_graph(seed, 4, 7, 2);
    auto reach = reach_table(g, 6);
    for (const auto& p : random_points(g, rng, 6)) {
      QuotientClass c = QuotientClass::of(g, p);
      for (VertexId v = 0; v < g.vertex_count(); ++v)
        for (std::size_t n = 0; n <= 4; ++n) {
          bool in_range = false;
          for (VertexId u = 0; u < g.vertex_count(); ++u) in_range = in_range || reach[n][u][v];
          if (!in_range) {
            EXPECT_THROW(in_basis_set(g, c, v, n), std::invalid_argument);
            continue;
          }
          bool got = in_basis_set(g, c, v, n);
          EXPECT_EQ(got, basis_set_oracle(g, p, v, n, 200)) << to_string(g, p) << " v=" << v << " n=" << n;
          EXPECT_EQ(got, in_basis_set(g, QuotientClass::of(g, c.representative()), v, n));
          if (n >= 1 && !(p.is_sink_path() && p.length() == 0))
            EXPECT_EQ(got, in_basis_set(g, shift_class(g, c), v, n - 1)) << to_string(g, p);
        }
    }
  }
}

TEST(Orbits, Examples) {
  EXPECT_TRUE(periodic_orbits(fixtures::loops(2)).empty());
  auto one = periodic_orbits(fixtures::loops(1));
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].classes.size(), 1u);
  Graph t = fixtures::two_cycle();
  auto two = periodic_orbits(t);
  ASSERT_EQ(two.size(), 1u);
  ASSERT_EQ(two[0].classes.size(), 2u);
  EXPECT_FALSE(two[0].classes[0] == two[0].classes[1]);
  EXPECT_EQ(shift_class(t, two[0].classes[1]), two[0].classes[0]);
}

TEST(Orbits, DichotomyWitness) {
  Graph g = fixtures::loops(2);
  auto w = dichotomy_witness(g);
  EXPECT_TRUE(w.topologically_free);
  ASSERT_EQ(w.loop_exits.size(), 2u);
  for (const auto& [loop, e] : w.loop_exits) {
    EXPECT_EQ(g.src(e), loop.start);
    EXPECT_NE(e, loop.edges.front());
  }
  auto t = dichotomy_witness(fixtures::two_cycle());
  EXPECT_FALSE(t.topologically_free);
  EXPECT_TRUE(t.loop_exits.empty());
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Graph r = fixtures::random_graph(seed, 4, 7);
    EXPECT_EQ(dichotomy_witness(r).topologically_free, oracles::every_cycle_has_exit(r)) << "seed " << seed;
  }
}

TEST(Ancestors, SingleEdge) {
  Graph g = fixtures::single_edge();
  auto d = ancestors_diagram(g, pp(g, "e1!"), 3);
  ASSERT_EQ(d.size(), 4u);
  ASSERT_EQ(d[0].size(), 1u);
  EXPECT_EQ(d[0][0].vertex, g.vertex("v"));
  ASSERT_EQ(d[1].size(), 1u);
  EXPECT_FALSE(d[1][0].tail);
  EXPECT_EQ(d[1][0].vertex, g.vertex("w"));
  for (std::size_t n = 2; n <= 3; ++n) {
    ASSERT_EQ(d[n].size(), 1u);
    EXPECT_TRUE(d[n][0].tail);
    EXPECT_EQ(d[n][0].path_length, 1u);
  }
  auto at_w = ancestors_diagram(g, pp(g, "!w"), 2);
  EXPECT_EQ(at_w[0].size(), 1u);
  EXPECT_EQ(at_w[0][0].vertex, g.vertex("w"));
  for (std::size_t n = 1; n <= 2; ++n) {
    ASSERT_EQ(at_w[n].size(), 1u);
    EXPECT_TRUE(at_w[n][0].tail);
    EXPECT_EQ(at_w[n][0].path_length, 0u);
  }
}

TEST(Ancestors, TwoLoopsKeepsEverything) {
  Graph g = fixtures::loops(2);
  auto d = ancestors_diagram(g, pp(g, "(e1)*"), 3);
  for (const auto& level : d) EXPECT_EQ(level.size(), 1u);
}
