#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

#include "fixtures.hpp"
#include "graphint/representation.hpp"
#include "graphint/structure.hpp"
#include "oracles.hpp"

using namespace graphint;

namespace {

std::size_t count_paths(const Graph& g, std::size_t depth) {
  std::size_t n = g.vertex_count();
  for (std::size_t k = 1; k <= depth; ++k) n += oracles::paths_of_length(g, k).size();
  return n;
}

// Dense S from brute-force path enumeration.
Eigen::MatrixXd dense_S(const Graph& g, const PathSpace& ps, std::size_t depth) {
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(ps.size(), ps.size());
  std::vector<int> indeg(g.vertex_count(), 0);
  for (const auto& e : g.edges()) ++indeg[e.dst];
  auto put = [&](const std::vector<EdgeId>& alpha, VertexId start) {
    if (alpha.size() >= depth) return;
    PathId from = alpha.empty() ? ps.id_of(Path::vertex(start)) : ps.id_of(Path::of_edges(g, alpha));
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (g.edge(e).dst != start) continue;
      std::vector<EdgeId> longer{e};
      longer.insert(longer.end(), alpha.begin(), alpha.end());
      s(ps.id_of(Path::of_edges(g, longer)), from) += 1.0 / std::sqrt(indeg[g.edge(e).dst]);
    }
  };
  for (VertexId v = 0; v < g.vertex_count(); ++v) put({}, v);
  for (std::size_t k = 1; k <= depth; ++k)
    for (const auto& p : oracles::paths_of_length(g, k)) put(p, g.edge(p.front()).src);
  return s;
}

CoreElement random_element(const CoreAlgebra& alg, std::size_t level, std::mt19937_64& rng) {
  auto basis = alg.basis(level);
  CoreElement a{level, {}};
  std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int i = 0; i < 3; ++i) a.terms.emplace_back(basis[pick(rng)], RadicalScalar(coef(rng)));
  a.normalize();
  return a;
}

}  // namespace

TEST(Rep, BasisSizes) {
  EXPECT_EQ(TruncatedRep(fixtures::loops(2), 3).dimension(), 15u);
  EXPECT_EQ(TruncatedRep(fixtures::single_edge(), 2).dimension(), 3u);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Graph g = fixtures::random_graph(seed, 4, 6);
    EXPECT_EQ(TruncatedRep(g, 3).dimension(), count_paths(g, 3)) << "seed " << seed;
  }
  EXPECT_THROW(TruncatedRep(fixtures::loops(1), 0), std::invalid_argument);
  EXPECT_THROW(TruncatedRep(fixtures::loops(3), 12, 1000), BoundExceeded);
}

TEST(Rep, ShiftMatchesDenseOracle) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Graph g = fixtures::random_graph(seed, 4, 6);
    TruncatedRep rep(g, 3);
    EXPECT_TRUE(rep.S().to_dense().isApprox(dense_S(g, rep.paths(), 3), 1e-12) || rep.dimension() == 0)
        << "seed " << seed;
  }
}

TEST(Rep, ShiftIsWeightedSumOfEdgeOperators) {
  Graph g = fixtures::chain_with_source();
  TruncatedRep rep(g, 3);
  SparseMatrix sum(rep.dimension());
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    sum = sum + rep.S_e(e).scaled(RadicalScalar::inv_sqrt(g.in_degree(g.dst(e))));
  EXPECT_EQ(sum, rep.S());
  EXPECT_EQ(rep.S_adjoint(), rep.S().adjoint());
}

TEST(Rep, PiOfUnitAndHomomorphism) {
  std::mt19937_64 rng(3);
  for (const auto& [name, g] : fixtures::fixture_set()) {
    CoreAlgebra alg(g, 3);
    TruncatedRep rep(g, 3);
    EXPECT_EQ(pi(alg, alg.unit(0), rep), SparseMatrix::identity(rep.dimension())) << name;
    for (std::size_t n = 1; n <= 3; ++n) {
      SparseMatrix p = pi(alg, alg.unit(n), rep);
      EXPECT_EQ(p * p, p) << name;
      EXPECT_EQ(p.adjoint(), p) << name;
    }
    for (int t = 0; t < 10; ++t) {
      CoreElement a = random_element(alg, 2, rng), b = random_element(alg, 2, rng);
      EXPECT_EQ(pi(alg, alg.mul(a, b), rep), pi(alg, a, rep) * pi(alg, b, rep)) << name;
      EXPECT_EQ(pi(alg, adjoint(a), rep), pi(alg, a, rep).adjoint()) << name;
      auto long_enough = [&](std::size_t j) { return rep.paths().length(static_cast<PathId>(j)) >= 3; };
      EXPECT_TRUE(pi(alg, alg.include_to_level(a, 3), rep).equal_on(pi(alg, a, rep), long_enough)) << name;
    }
  }
}

TEST(Rep, InclusionDiffersBelowTargetLevel) {
  Graph g = fixtures::loops(2);
  CoreAlgebra alg(g, 2);
  TruncatedRep rep(g, 2);
  CoreElement p = alg.vertex_projection(0, 0);
  SparseMatrix up = pi(alg, alg.include_to_level(p, 1), rep);
  EXPECT_TRUE(up.at(0, 0).is_zero());
  EXPECT_EQ(pi(alg, p, rep).at(0, 0), RadicalScalar(1));
}

TEST(Rep, ShiftConjugatesUnitToV) {
  for (const auto& [name, g] : fixtures::fixture_set()) {
    CoreAlgebra alg(g, 2);
    TruncatedRep rep(g, 3);
    EXPECT_EQ(rep.S() * rep.S_adjoint(), pi(alg, alg.V(alg.unit(0)), rep)) << name;
  }
}

TEST(Rep, VHOracleOnFixtures) {
  for (const auto& [name, g] : fixtures::fixture_set())
    for (std::size_t n = 0; n <= 2; ++n) EXPECT_TRUE(oracle_check_VH(g, n, n + 2)) << name << " level " << n;
  EXPECT_THROW(oracle_check_VH(fixtures::loops(2), 3, 3), std::invalid_argument);
}

TEST(Rep, HOutsideWindowFailsWhenPathsContinue) {
  Graph g = fixtures::loops(2);
  CoreAlgebra alg(g, 2);
  TruncatedRep rep(g, 2);
  SparseMatrix lhs = rep.S_adjoint() * pi(alg, alg.unit(0), rep) * rep.S();
  SparseMatrix rhs = pi(alg, alg.H(alg.unit(0)), rep);
  EXPECT_TRUE(lhs.equal_on(rhs, rep.window(1)));
  EXPECT_FALSE(lhs.equal_on(rhs, [](std::size_t) { return true; }));
}

TEST(Rep, CuntzKriegerWindow) {
  for (const auto& [name, g] : fixtures::fixture_set())
    for (std::size_t L = 2; L <= 4; ++L) {
      EXPECT_TRUE(ck_window_check(g, L)) << name << " L=" << L;
      bool longer = !oracles::paths_of_length(g, L + 1).empty();
      EXPECT_EQ(ck_full_space_check(g, L), !longer) << name << " L=" << L;
    }
  EXPECT_THROW(ck_window_check(fixtures::loops(1), 1), std::invalid_argument);
}

TEST(Rep, SecondRelationFailsAtLengthZero) {
  Graph g = fixtures::loops(2);
  TruncatedRep rep(g, 3);
  SparseMatrix sum(rep.dimension());
  for (EdgeId e = 0; e < g.edge_count(); ++e) sum = sum + rep.S_e(e) * rep.S_e(e).adjoint();
  EXPECT_NE(sum.at(0, 0), RadicalScalar(1));
  EXPECT_EQ(rep.P_v(0).at(0, 0), RadicalScalar(1));
}

TEST(Rep, SingleEdgeIsNotAnIsometry) {
  Graph g = fixtures::single_edge();
  TruncatedRep rep(g, 2);
  EXPECT_NE(rep.S_adjoint() * rep.S(), SparseMatrix::identity(rep.dimension()));
}

TEST(Rep, PowerPartialIsometryMatchesOracles) {
  for (const auto& [name, g] : fixtures::fixture_set())
    for (unsigned n = 1; n <= 4; ++n) {
      auto sums = oracles::power_column_sums(g, n);
      bool oracle = std::all_of(sums.begin(), sums.end(), [](const oracles::Rat& x) { return x == 0 || x == 1; });
      EXPECT_EQ(power_partial_isometry_check(g, n, n + 1), oracle) << name << " n=" << n;
      EXPECT_EQ(power_partial_isometry_check(g, n, n + 2), oracle) << name << " n=" << n;
    }
  EXPECT_THROW(power_partial_isometry_check(fixtures::loops(1), 2, 2), std::invalid_argument);
}

TEST(Rep, PositivitySpotCheck) {
  for (const auto& [name, g] : fixtures::fixture_set()) {
    auto r = positivity_spot_check(g, 2, 10, 7);
    EXPECT_EQ(r.samples, 10u);
    EXPECT_TRUE(r.passed()) << name << " " << r.min_eigenvalue;
  }
}

TEST(Rep, DumpFormat) {
  TruncatedRep rep(fixtures::single_edge(), 1);
  EXPECT_EQ(dump(rep.S()), "2 1 1\n");
}
