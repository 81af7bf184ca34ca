#include <gtest/gtest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "graphint/rational_matrix.hpp"
#include "graphint/structure.hpp"
#include "oracles.hpp"

using namespace graphint;
using fixtures::from_text;

namespace {

std::vector<std::string> names_of(const Graph& g, const VertexSet& s) {
  std::vector<std::string> out;
  for (VertexId v : s) out.push_back(g.vertex_name(v));
  return out;
}

Rational q(long long n, long long d = 1) { return Rational(Integer(n), Integer(d)); }

}  // namespace

TEST(Parse, SingleEdge) {
  Graph g = from_text("v -> w");
  EXPECT_EQ(g.vertex_names(), (std::vector<std::string>{"v", "w"}));
  EXPECT_EQ(g.edge_count(), 1u);
}

TEST(Parse, IsolatedVertex) {
  Graph g = from_text("vertex u\n");
  EXPECT_EQ(g.vertex_count(), 1u);
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(Parse, ParallelEdgesSurviveRoundTrip) {
  Graph g = from_text("v -> w\nv -> w\n");
  ASSERT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(adjacency_matrix(g)(0, 1), q(2));
  EXPECT_EQ(parse_graph(to_text(g)), g);
  EXPECT_EQ(parse_graph(to_json(g).dump()), g);
}

TEST(Parse, CommentsAndDeclarationOrder) {
  Graph g = from_text("# header\nvertex b\n a -> b # trailing\n\n");
  EXPECT_EQ(g.vertex_names(), (std::vector<std::string>{"b", "a"}));
}

TEST(Parse, Errors) {
  EXPECT_THROW(from_text("vertex v\nvertex v\n"), ParseError);
  EXPECT_THROW(from_text("v => w\n"), ParseError);
  EXPECT_THROW(from_text("v -> \n"), ParseError);
  EXPECT_THROW(from_text("v-w -> x\n"), ParseError);
  EXPECT_THROW(parse_graph("vertex v\nv -> w\n", ParseOptions{.strict = true}), ParseError);
  EXPECT_THROW(parse_graph("{\"edges\": [{\"src\": \"a\"}]}"), ParseError);
  try {
    from_text("v -> w\nbad line\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Parse, JsonFormat) {
  Graph g = parse_graph(R"({"vertices": ["a", "b"], "edges": [{"src": "a", "dst": "b"}, {"src": "b", "dst": "a"}]})");
  EXPECT_EQ(g, fixtures::from_text("vertex a\nvertex b\na -> b\nb -> a\n"));
}

TEST(Matrices, Adjacency) {
  EXPECT_EQ(adjacency_matrix(fixtures::loops(2))(0, 0), q(2));
  auto a = adjacency_matrix(fixtures::single_edge());
  EXPECT_EQ(a(0, 1), q(1));
  EXPECT_EQ(a(1, 0), q(0));
  auto c = adjacency_matrix(fixtures::two_cycle());
  EXPECT_EQ(c(0, 1), q(1));
  EXPECT_EQ(c(1, 0), q(1));
  EXPECT_EQ(c(0, 0), q(0));
}

TEST(Matrices, Transition) {
  EXPECT_EQ(transition_matrix(fixtures::loops(2))(0, 0), q(1));
  Graph g = from_text("v -> w\nu -> w\n");
  auto p = transition_matrix(g);
  EXPECT_EQ(p(g.vertex("v"), g.vertex("w")), q(1, 2));
  EXPECT_EQ(p(g.vertex("u"), g.vertex("w")), q(1, 2));
  auto iso = transition_matrix(from_text("vertex x\n"));
  EXPECT_EQ(iso(0, 0), q(0));
}

TEST(Matrices, PartiallyStochastic) {
  RationalMatrix half(2, 2);
  half(0, 0) = q(1, 2);
  EXPECT_FALSE(is_partially_stochastic(half));
  EXPECT_TRUE(is_partially_stochastic(RationalMatrix(3, 3)));
  RationalMatrix neg(1, 1);
  neg(0, 0) = q(-1);
  EXPECT_THROW(is_partially_stochastic(neg), std::domain_error);
}

TEST(MatricesProperty, TransitionColumnsSumToZeroOrOne) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Graph g = fixtures::random_graph(seed);
    auto p = transition_matrix(g);
    for (VertexId w = 0; w < g.vertex_count(); ++w)
      EXPECT_EQ(p.column_sum(w), g.in_degree(w) ? q(1) : q(0)) << "seed " << seed;
  }
}

TEST(Powers, LoopsContainEverything) {
  EXPECT_EQ(interaction_powers(fixtures::loops(2), 5), (std::vector<unsigned>{1, 2, 3, 4, 5}));
}

TEST(Powers, ChainWithExtraSourceExcludesTwo) {
  Graph g = fixtures::chain_with_source();
  auto p = interaction_powers(g, 3);
  EXPECT_EQ(p, (std::vector<unsigned>{1, 3}));
  auto sums = oracles::power_column_sums(g, 2);
  EXPECT_EQ(sums[g.vertex("w")], oracles::Rat(1, 2));
}

// Hand analysis of the family graph: the only length-k path reaching v0 from a
// non-source that collides with a shorter source-started path is k = n.
TEST(Powers, FamilyGraphComplementOfN) {
  auto o = interaction_power_oracles(fixtures::family(3), 6);
  EXPECT_EQ(o.stochastic, (std::vector<unsigned>{1, 2, 4, 5, 6}));
  EXPECT_EQ(o.path_condition, o.stochastic);
  auto o2 = interaction_power_oracles(fixtures::family(2), 6);
  EXPECT_EQ(o2.stochastic, (std::vector<unsigned>{1, 3, 4, 5, 6}));
}

TEST(PowersProperty, OraclesAgreeOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Graph g = fixtures::random_graph(seed);
    auto o = interaction_power_oracles(g, 8);
    ASSERT_EQ(o.stochastic, o.path_condition) << "seed " << seed;
    for (unsigned n = 1; n <= 5; ++n) {
      auto sums = oracles::power_column_sums(g, n);
      bool brute = std::all_of(sums.begin(), sums.end(), [](const oracles::Rat& s) { return s == 0 || s == 1; });
      EXPECT_EQ(brute, std::binary_search(o.stochastic.begin(), o.stochastic.end(), n)) << "seed " << seed;
    }
    if (g.edge_count() > 0) EXPECT_EQ(o.stochastic.front(), 1u);
    if (is_cstar_dynamical(g)) EXPECT_EQ(o.stochastic.size(), 8u);
  }
}

TEST(Powers, RejectsZero) { EXPECT_THROW(interaction_powers(fixtures::loops(1), 0), std::invalid_argument); }

TEST(Dynamical, Examples) {
  EXPECT_TRUE(is_cstar_dynamical(fixtures::single_edge()));
  EXPECT_FALSE(is_cstar_dynamical(from_text("v -> v\nu -> v\n")));
  EXPECT_TRUE(is_cstar_dynamical(fixtures::loops(3)));
  EXPECT_TRUE(is_cstar_dynamical(fixtures::two_cycle()));
}

// Path counts by length, split by whether the path starts at a source.
TEST(Dynamical, PathCountDefinition) {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    Graph g = fixtures::random_graph(seed, 5, 8);
    const std::size_t nv = g.vertex_count();
    std::vector<oracles::Int> src(nv), other(nv);
    for (VertexId v = 0; v < nv; ++v) (g.is_source(v) ? src : other)[v] = 1;
    bool ok = true;
    for (int n = 0; n <= 40 && ok; ++n) {
      for (VertexId w = 0; w < nv; ++w)
        if (src[w] != 0 && other[w] != 0) ok = false;
      std::vector<oracles::Int> ns(nv), no(nv);
      for (const auto& e : g.edges()) {
        ns[e.dst] += src[e.src];
        no[e.dst] += other[e.src];
      }
      src = std::move(ns);
      other = std::move(no);
    }
    EXPECT_EQ(is_cstar_dynamical(g), ok) << "seed " << seed;
  }
}

TEST(HMultiplicative, Examples) {
  EXPECT_TRUE(is_H_multiplicative(fixtures::chain()));
  EXPECT_FALSE(is_H_multiplicative(from_text("v -> w\nv -> w\n")));
  EXPECT_FALSE(is_H_multiplicative(fixtures::loops(2)));
}

TEST(Loops, Examples) {
  auto l2 = simple_loops(fixtures::loops(2));
  ASSERT_EQ(l2.size(), 2u);
  EXPECT_EQ(l2[0].length(), 1u);
  auto c = simple_loops(fixtures::two_cycle());
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].length(), 2u);
  EXPECT_TRUE(simple_loops(fixtures::chain()).empty());
}

TEST(LoopsProperty, MatchBruteForceCycles) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    Graph g = fixtures::random_graph(seed, 5, 9);
    auto loops = simple_loops(g);
    std::set<std::vector<EdgeId>> got;
    for (const auto& l : loops) {
      EXPECT_TRUE(got.insert(l.edges).second) << "duplicate loop, seed " << seed;
      auto r = l.edges;
      for (std::size_t i = 1; i < r.size(); ++i) {
        std::rotate(r.begin(), r.begin() + 1, r.end());
        EXPECT_LE(l.edges, r);
      }
    }
    EXPECT_EQ(got, oracles::vertex_simple_cycles(g)) << "seed " << seed;
    EXPECT_EQ(condition_L(g), oracles::every_cycle_has_exit(g)) << "seed " << seed;
  }
}

TEST(ConditionLK, HandClassified) {
  EXPECT_FALSE(condition_L(fixtures::loops(1)));
  EXPECT_FALSE(condition_K(fixtures::loops(1)));
  EXPECT_TRUE(condition_L(fixtures::loops(2)));
  EXPECT_TRUE(condition_K(fixtures::loops(2)));
  EXPECT_TRUE(condition_L(fixtures::loop_with_sink_exit()));
  EXPECT_FALSE(condition_K(fixtures::loop_with_sink_exit()));
}

TEST(ConditionKProperty, FormulationsAgreeAndKImpliesL) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Graph g = fixtures::random_graph(seed);
    auto o = condition_K_oracles(g);
    EXPECT_EQ(o.hereditary_saturated, o.return_paths) << "seed " << seed;
    if (o.hereditary_saturated) EXPECT_TRUE(condition_L(g));
  }
}

TEST(Hereditary, Closure) {
  Graph g = fixtures::single_edge();
  EXPECT_EQ(names_of(g, hereditary_saturated_closure(g, std::vector<std::string>{"w"})),
            (std::vector<std::string>{"v", "w"}));
  EXPECT_TRUE(hereditary_saturated_closure(g, VertexSet{}).empty());
  EXPECT_EQ(hereditary_saturated_closure(g, VertexSet{0, 1}), (VertexSet{0, 1}));
  EXPECT_THROW(hereditary_saturated_closure(g, std::vector<std::string>{"nope"}), std::exception);
}

TEST(Hereditary, Lattices) {
  auto l = all_hereditary_saturated(fixtures::loops(2));
  EXPECT_EQ(l, (std::vector<VertexSet>{{}, {0}}));
  EXPECT_EQ(all_hereditary_saturated(fixtures::single_edge()), (std::vector<VertexSet>{{}, {0, 1}}));
  EXPECT_EQ(all_hereditary_saturated(from_text("vertex u\nvertex v\n")),
            (std::vector<VertexSet>{{}, {0}, {1}, {0, 1}}));
}

TEST(Hereditary, BoundGuard) {
  std::string t;
  for (int i = 0; i < 6; ++i) t += "vertex x" + std::to_string(i) + "\n";
  EXPECT_THROW(all_hereditary_saturated(from_text(t), 5), BoundExceeded);
}

TEST(HereditaryProperty, LatticeMatchesBruteForceAndIsClosed) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    Graph g = fixtures::random_graph(seed, 5, 8);
    auto lattice = all_hereditary_saturated(g);
    std::set<std::uint64_t> got;
    for (const auto& s : lattice) {
      std::uint64_t m = 0;
      for (VertexId v : s) m |= std::uint64_t{1} << v;
      got.insert(m);
    }
    EXPECT_EQ(got, oracles::hereditary_saturated_masks(g)) << "seed " << seed;
    for (std::size_t i = 1; i < lattice.size(); ++i) EXPECT_LE(lattice[i - 1].size(), lattice[i].size());
    for (const auto& a : lattice)
      for (const auto& b : lattice) {
        VertexSet meet, join;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(meet));
        std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(join));
        EXPECT_TRUE(is_hereditary_saturated(g, meet));
        EXPECT_TRUE(is_hereditary_saturated(g, hereditary_saturated_closure(g, join)));
      }
  }
}

TEST(Verdicts, Examples) {
  for (int n = 2; n <= 4; ++n) {
    Verdicts v = verdicts(fixtures::loops(n));
    EXPECT_TRUE(v.simple);
    EXPECT_TRUE(v.purely_infinite);
  }
  Verdicts e = verdicts(fixtures::single_edge());
  EXPECT_TRUE(e.simple);
  EXPECT_FALSE(e.purely_infinite);
  EXPECT_EQ(e.simple_reason.rfind("criteria met", 0), 0u);
  Verdicts c = verdicts(fixtures::two_cycle());
  EXPECT_FALSE(c.simple);
  EXPECT_EQ(c.simple_reason.rfind("criteria not met", 0), 0u);
  EXPECT_FALSE(c.topologically_free);
}
