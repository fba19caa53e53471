#include <gtest/gtest.h>

#include <map>
#include <set>

#include "chowzero/engine.hpp"
#include "chowzero/enumerate.hpp"
#include "chowzero/rank.hpp"
#include "chowzero/relations.hpp"
#include "chowzero/strata.hpp"
#include "support/brute_force.hpp"

namespace chowzero {
namespace {

using Side = std::vector<int>;

std::map<std::pair<Side, Side>, Rational> split_terms(const LocalRelation& rel) {
  std::map<std::pair<Side, Side>, Rational> out;
  for (const auto& t : rel.splits) {
    EXPECT_TRUE(t.psi.empty());
    out[{t.first, t.second}] += t.coeff;
  }
  return out;
}

NormalFormStratum as_stratum(const PrestableGraph& g, std::vector<int> exps = {}) {
  if (exps.empty()) exps.assign(g.num_vertices(), 0);
  return canonicalize_signed(g, exps).stratum;
}

NormalFormStratum one_edge(int n, const Side& side) {
  Side rest;
  for (int l = 1; l <= n; ++l) {
    if (std::find(side.begin(), side.end(), l) == side.end()) rest.push_back(l);
  }
  return as_stratum(PrestableGraph(n, {side, rest}, {{0, 1}}));
}

SparseRatMatrix to_matrix(const std::vector<StrataVector>& rows,
                          const std::vector<NormalFormStratum>& columns) {
  std::map<NormalFormStratum, int> index;
  for (const auto& s : columns) index.emplace(s, static_cast<int>(index.size()));
  SparseRatMatrix m(0, static_cast<int>(columns.size()));
  for (const auto& v : rows) {
    SparseRatMatrix::Row row;
    for (const auto& [s, c] : v.terms()) row.emplace_back(index.at(s), c);
    m.append_row(std::move(row));
  }
  return m;
}

std::vector<StrataVector> vectors_of(const std::vector<RelationVector>& rels) {
  std::vector<StrataVector> out;
  for (const auto& r : rels) out.push_back(r.vector);
  return out;
}

TEST(WdvvLocalTest, FourMarkings) {
  const std::vector<int> markings{1, 2, 3, 4};
  auto rel = wdvv_local(markings, {1, 2, 3, 4}, WdvvPairing::kSecond);
  EXPECT_TRUE(rel.vertex_terms.empty());
  auto terms = split_terms(rel);
  ASSERT_EQ(terms.size(), 2u);
  EXPECT_EQ(terms.at({{1, 2}, {3, 4}}), 1);
  EXPECT_EQ(terms.at({{1, 3}, {2, 4}}), -1);
  auto third = split_terms(wdvv_local(markings, {1, 2, 3, 4}, WdvvPairing::kThird));
  EXPECT_EQ(third.at({{1, 4}, {2, 3}}), -1);
}

TEST(WdvvLocalTest, FifthMarkingDistributes) {
  const std::vector<int> markings{1, 2, 3, 4, 5};
  auto terms = split_terms(wdvv_local(markings, {1, 2, 3, 4}, WdvvPairing::kSecond));
  ASSERT_EQ(terms.size(), 4u);
  EXPECT_EQ(terms.at({{1, 2, 5}, {3, 4}}), 1);
  EXPECT_EQ(terms.at({{1, 2}, {3, 4, 5}}), 1);
  EXPECT_EQ(terms.at({{1, 3, 5}, {2, 4}}), -1);
  EXPECT_EQ(terms.at({{1, 3}, {2, 4, 5}}), -1);
}

TEST(WdvvLocalTest, ExtraMarkingsDoubleTheTerms) {
  for (int extra = 0; extra <= 3; ++extra) {
    std::vector<int> markings{1, 2, 3, 4};
    for (int i = 0; i < extra; ++i) markings.push_back(5 + i);
    auto rel = wdvv_local(markings, {1, 2, 3, 4}, WdvvPairing::kThird);
    EXPECT_EQ(rel.splits.size(), 2u << extra);
  }
}

TEST(WdvvLocalTest, IdenticalPairingIsEmpty) {
  const std::vector<int> markings{1, 2, 3, 4, 5};
  QuadSplit same{{1, 2}, {3, 4}};
  EXPECT_TRUE(wdvv_local(markings, same, same).empty());
  QuadSplit flipped{{3, 4}, {2, 1}};
  EXPECT_TRUE(wdvv_local(markings, same, flipped).empty());
}

TEST(WdvvLocalTest, RejectsBadInput) {
  EXPECT_THROW(wdvv_local(std::vector<int>{1, 2, 3}, {1, 2, 3, 1}, WdvvPairing::kSecond),
               std::invalid_argument);
  EXPECT_THROW(wdvv_local(std::vector<int>{1, 2, 3, 3}, {1, 2, 3, 3}, WdvvPairing::kSecond),
               std::invalid_argument);
  EXPECT_THROW(wdvv_local(std::vector<int>{1, 2, 3, 4}, {1, 2, 3, 5}, WdvvPairing::kSecond),
               std::invalid_argument);
  EXPECT_THROW(wdvv_local(std::vector<int>{1, 2, 3, 4}, {1, 1, 3, 4}, WdvvPairing::kSecond),
               std::invalid_argument);
}

TEST(GlueTest, IntoFourPointedVertex) {
  auto base = as_stratum(PrestableGraph::trivial(4));
  auto hs = base.graph.half_edges(0);
  auto rel = wdvv_local(std::vector<int>{0, 1, 2, 3}, {0, 1, 2, 3}, WdvvPairing::kSecond);
  auto v = glue_relation_at_vertex(base, 0, rel, hs);
  EXPECT_EQ(v.degree(), degree(base) + 1);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v.coefficient(one_edge(4, {1, 2})), 1);
  EXPECT_EQ(v.coefficient(one_edge(4, {1, 3})), -1);
}

TEST(GlueTest, IntoTwoVertexGraph) {
  // Legs {1,2} on one vertex and {3,4,5} on the other; glue at the latter.
  PrestableGraph g(5, {{1, 2}, {3, 4, 5}}, {{0, 1}});
  auto base = as_stratum(g);
  const int v = base.graph.vertex_of_leg(3);
  auto hs = base.graph.half_edges(v);
  ASSERT_EQ(hs.size(), 4u);
  auto rel = wdvv_local(std::vector<int>{0, 1, 2, 3}, {0, 1, 2, 3}, WdvvPairing::kSecond);
  auto glued = glue_relation_at_vertex(base, v, rel, hs);
  // (34|5e) - (35|4e): two chains whose middle vertex carries one leg.
  auto chain = [](const Side& middle, const Side& end) {
    std::vector<std::vector<int>> legs{{1, 2}, middle, end};
    return as_stratum(PrestableGraph(5, legs, {{0, 1}, {1, 2}}));
  };
  ASSERT_EQ(glued.size(), 2u);
  EXPECT_EQ(glued.coefficient(chain({5}, {3, 4})), 1);
  EXPECT_EQ(glued.coefficient(chain({4}, {3, 5})), -1);
}

TEST(GlueTest, TwoValentVertexIsHalfTheTwoTermClass) {
  auto base = as_stratum(PrestableGraph::trivial(4));
  LocalRelation rel{{0, 1, 2, 3}, {{{0}, {1, 2, 3}, {}, Rational(1)}}, {}};
  auto v = glue_relation_at_vertex(base, 0, rel, base.graph.half_edges(0));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v.coefficient(one_edge(4, {1})), Rational(1, 2));
}

TEST(GlueTest, EmptyRelationGivesZero) {
  auto base = as_stratum(PrestableGraph::trivial(4));
  LocalRelation empty{{0, 1, 2, 3}, {}, {}};
  EXPECT_TRUE(glue_relation_at_vertex(base, 0, empty, base.graph.half_edges(0)).empty());
}

TEST(GlueTest, RejectsDecoratedVertexOrArityMismatch) {
  auto rel = wdvv_local(std::vector<int>{0, 1, 2, 3}, {0, 1, 2, 3}, WdvvPairing::kSecond);
  auto five = as_stratum(PrestableGraph::trivial(5));
  EXPECT_THROW(glue_relation_at_vertex(five, 0, rel, five.graph.half_edges(0)),
               std::invalid_argument);
  auto chain = as_stratum(PrestableGraph(2, {{1}, {2}}, {{0, 1}}), {1, 0});
  auto hs = chain.graph.half_edges(0);
  EXPECT_THROW(glue_relation_at_vertex(chain, 0, rel, hs), std::invalid_argument);
  auto four = as_stratum(PrestableGraph::trivial(4));
  std::vector<HalfEdge> wrong{HalfEdge::leg(1), HalfEdge::leg(2), HalfEdge::leg(3),
                              HalfEdge::leg(3)};
  EXPECT_THROW(glue_relation_at_vertex(four, 0, rel, wrong), std::invalid_argument);
}

TEST(GlueTest, LinearInTheRelation) {
  auto base = as_stratum(PrestableGraph(6, {{1, 2}, {3, 4, 5, 6}}, {{0, 1}}));
  const int v = base.graph.vertex_of_leg(3);
  auto hs = base.graph.half_edges(v);
  const std::vector<int> markings{0, 1, 2, 3, 4};
  auto a = wdvv_local(markings, {0, 1, 2, 3}, WdvvPairing::kSecond);
  auto b = wdvv_local(markings, {1, 2, 3, 4}, WdvvPairing::kThird);
  LocalRelation combined{markings, a.splits, {}};
  for (auto t : b.splits) {
    t.coeff *= 3;
    combined.splits.push_back(t);
  }
  auto expected = glue_relation_at_vertex(base, v, a, hs);
  expected.add(glue_relation_at_vertex(base, v, b, hs), 3);
  EXPECT_EQ(glue_relation_at_vertex(base, v, combined, hs), expected);
}

TEST(GlueTest, MatchesTermwiseCanonicalization) {
  // A base with an odd two-term vertex, glued at a five-valent vertex so
  // that every new vertex stays trivially decorated.
  PrestableGraph g(6, {{1}, {}, {2, 3, 4, 5, 6}}, {{0, 1}, {1, 2}});
  auto base = as_stratum(g, {3, 1, 0});
  int v = base.graph.vertex_of_leg(2);
  auto hs = base.graph.half_edges(v);
  const std::vector<int> markings{0, 1, 2, 3, 4, 5};
  LocalRelation rel{markings, {}, {}};
  rel.splits.push_back({{0, 1, 2}, {3, 4, 5}, {}, Rational(2)});
  rel.splits.push_back({{0, 5}, {1, 2, 3, 4}, {}, Rational(-1, 3)});
  rel.splits.push_back({{0, 3, 4}, {1, 2, 5}, {}, Rational(5)});
  StrataVector expected(6, degree(base) + 1);
  for (const auto& t : rel.splits) {
    std::vector<HalfEdge> kept;
    for (int m : t.first) kept.push_back(hs[m]);
    auto split = split_vertex(base.graph, v, kept);
    auto exps = base.exps;
    exps.push_back(0);
    auto term = canonicalize_decorated(split.graph, exps, t.coeff);
    if (term.coeff != 0) expected.add(term.stratum, term.coeff);
  }
  EXPECT_FALSE(expected.empty());
  EXPECT_EQ(glue_relation_at_vertex(base, v, rel, hs), expected);
}

TEST(WdvvRelationsTest, FourPointsDegreeOne) {
  auto rels = wdvv_relations(4, 1, LocusPredicate::all());
  EXPECT_EQ(rels.size(), 2u);
  auto basis = enumerate_basis(4, 1, LocusPredicate::all());
  ASSERT_EQ(basis.size(), 8u);
  EXPECT_EQ(rank(to_matrix(vectors_of(rels), basis)), 2u);
  for (const auto& r : rels) {
    EXPECT_EQ(r.provenance.kind, "wdvv");
    EXPECT_EQ(r.provenance.quad.size(), 4u);
  }
}

TEST(WdvvRelationsTest, NoneBelowDegreeFiveWithoutMarkings) {
  for (int d = 1; d <= 4; ++d) EXPECT_TRUE(wdvv_relations(0, d, LocusPredicate::all()).empty());
  EXPECT_FALSE(wdvv_relations(0, 5, LocusPredicate::all()).empty());
}

TEST(WdvvRelationsTest, ChainTProjectsToZero) {
  for (int d = 1; d <= 6; ++d) {
    for (const auto& r : wdvv_relations(3, d, LocusPredicate::chain_t())) {
      EXPECT_TRUE(r.vector.empty()) << "d=" << d;
    }
  }
}

TEST(WdvvRelationsTest, LocusRowsAreProjections) {
  const std::vector<std::pair<int, LocusPredicate>> cases{
      {0, LocusPredicate::max_nodes(4)},
      {3, LocusPredicate::semistable()},
      {5, LocusPredicate::stable()},
  };
  for (const auto& [n, locus] : cases) {
    for (int d = 1; d <= 5; ++d) {
      auto all = wdvv_relations(n, d, LocusPredicate::all());
      auto restricted = wdvv_relations(n, d, locus);
      ASSERT_EQ(all.size(), restricted.size());
      for (std::size_t i = 0; i < all.size(); ++i) {
        StrataVector projected(n, d);
        for (const auto& [s, c] : all[i].vector.terms()) {
          if (locus(s.graph)) projected.add(s, c);
        }
        EXPECT_EQ(projected, restricted[i].vector) << locus.name() << " d=" << d;
      }
    }
  }
}

TEST(WdvvRelationsTest, LocusBasesGiveTheSameRank) {
  const std::vector<std::tuple<int, int, LocusPredicate>> cases{
      {0, 6, LocusPredicate::max_nodes(4)},
      {3, 4, LocusPredicate::semistable()},
      {6, 2, LocusPredicate::stable()},
      {2, 5, LocusPredicate::max_nodes(3)},
  };
  for (const auto& [n, d, locus] : cases) {
    auto basis = enumerate_basis(n, d, locus);
    auto global = rank(to_matrix(vectors_of(wdvv_relations(n, d, locus)), basis));
    auto system = relation_system({n, d, locus});
    EXPECT_EQ(system.basis, basis);
    EXPECT_EQ(rank(system.matrix), global) << locus.name();
  }
}

TEST(WdvvRelationsTest, StableDegreeOneSpansKeelRelations) {
  for (int n = 4; n <= 6; ++n) {
    auto basis = enumerate_basis(n, 1, LocusPredicate::stable());
    auto ours = vectors_of(wdvv_relations(n, 1, LocusPredicate::stable()));
    std::vector<StrataVector> keel;
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        for (int k = j + 1; k <= n; ++k) {
          for (int l = k + 1; l <= n; ++l) {
            // Sum of D_S over S containing i, j and avoiding k, l, minus the
            // same with j exchanged for k or for l.
            for (int swap : {k, l}) {
              const int rest = swap == k ? l : k;
              StrataVector row(n, 1);
              for (int mask = 0; mask < (1 << n); ++mask) {
                auto in = [&](int x) { return (mask >> (x - 1)) & 1; };
                const int size = __builtin_popcount(mask);
                if (size < 2 || n - size < 2) continue;
                Side side;
                for (int x = 1; x <= n; ++x) {
                  if (in(x)) side.push_back(x);
                }
                if (in(i) && in(j) && !in(k) && !in(l)) row.add(one_edge(n, side), 1);
                if (in(i) && in(swap) && !in(j) && !in(rest)) row.add(one_edge(n, side), -1);
              }
              keel.push_back(row);
            }
          }
        }
      }
    }
    auto ours_m = to_matrix(ours, basis);
    auto keel_m = to_matrix(keel, basis);
    auto both = to_matrix(ours, basis);
    for (const auto& v : keel) both.append_row(to_matrix({v}, basis).row(0));
    EXPECT_EQ(rank(ours_m), rank(keel_m)) << "n=" << n;
    EXPECT_EQ(rank(both), rank(keel_m)) << "n=" << n;
  }
}

TEST(WdvvRelationsTest, StableDimensionsMatchKeelOracle) {
  for (const auto& [n, dims] : testing::keel_dimensions()) {
    for (int d = 0; d < static_cast<int>(dims.size()); ++d) {
      EXPECT_EQ(chow_rank({n, d, LocusPredicate::stable()}).dimension,
                static_cast<std::size_t>(dims[d]))
          << "n=" << n << " d=" << d;
    }
  }
}

TEST(WdvvRelationsTest, StreamingRowsAgreeWithVectors) {
  auto rels = wdvv_relations(5, 2, LocusPredicate::all());
  std::size_t index = 0;
  for_each_wdvv_row(5, 2, LocusPredicate::all(), [&](const WdvvRow& row) {
    ASSERT_LT(index, rels.size());
    StrataVector v(5, 2);
    for (const auto& t : row.terms) v.add(t.stratum, t.sign);
    EXPECT_EQ(v, rels[index].vector);
    ++index;
  });
  EXPECT_EQ(index, rels.size());
}

}  // namespace
}  // namespace chowzero
