#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "chowzero/engine.hpp"
#include "chowzero/rank.hpp"
#include "chowzero/relations.hpp"
#include "chowzero/sparse_matrix.hpp"

namespace chowzero {
namespace {

Rational frac(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

SparseRatMatrix dense(const std::vector<std::vector<Rational>>& rows) {
  SparseRatMatrix m(0, rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (const auto& r : rows) {
    SparseRatMatrix::Row row;
    for (int c = 0; c < static_cast<int>(r.size()); ++c) {
      if (r[c] != 0) row.emplace_back(c, r[c]);
    }
    m.append_row(std::move(row));
  }
  return m;
}

SparseRatMatrix identity(int k) {
  SparseRatMatrix m(k, k);
  for (int i = 0; i < k; ++i) m.set(i, i, 1);
  return m;
}

// Sparse matrix with `independent` random rows followed by random
// combinations of them, so its rank is known in advance with high
// probability (and never exceeds `independent`).
SparseRatMatrix random_low_rank(int rows, int cols, int independent, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> value(-9, 9);
  std::uniform_int_distribution<int> column(0, cols - 1);
  std::vector<SparseRatMatrix::Row> basis;
  for (int i = 0; i < independent; ++i) {
    SparseRatMatrix::Row row;
    for (int k = 0; k < 4; ++k) {
      if (int x = value(rng)) row.emplace_back(column(rng), frac(x, 1 + rng() % 5));
    }
    basis.push_back(row);
  }
  SparseRatMatrix m(0, cols);
  for (const auto& r : basis) m.append_row(r);
  for (int i = independent; i < rows; ++i) {
    SparseRatMatrix::Row row;
    for (int k = 0; k < 3; ++k) {
      const auto& src = basis[rng() % basis.size()];
      const Rational scale = frac(value(rng), 1 + rng() % 3);
      for (const auto& [c, v] : src) row.emplace_back(c, v * scale);
    }
    m.append_row(std::move(row));
  }
  return m;
}

TEST(SparseMatrixTest, StoresNoZeros) {
  SparseRatMatrix m(2, 3);
  m.set(0, 1, Rational(1, 2));
  m.set(0, 1, 0);
  EXPECT_EQ(m.nnz(), 0u);
  int r = m.append_row({{2, 1}, {0, 3}, {2, -1}});
  EXPECT_EQ(r, 2);
  EXPECT_EQ(m.row(2).size(), 1u);
  EXPECT_EQ(m.at(2, 0), 3);
  EXPECT_THROW(m.set(0, 3, 1), std::out_of_range);
  EXPECT_THROW(m.set_column_keys({"a", "a", "b"}), std::invalid_argument);
  EXPECT_THROW(m.set_column_keys({"a", "b"}), std::invalid_argument);
}

TEST(SparseMatrixTest, TripletRoundTrip) {
  std::mt19937_64 rng(1);
  auto m = random_low_rank(12, 9, 5, rng);
  std::stringstream text;
  write_triplets(text, m);
  auto back = read_triplets(text);
  ASSERT_EQ(back.rows(), m.rows());
  ASSERT_EQ(back.cols(), m.cols());
  for (int r = 0; r < m.rows(); ++r) EXPECT_EQ(back.row(r), m.row(r));
}

TEST(SparseMatrixTest, TripletFormat) {
  SparseRatMatrix m(2, 2);
  m.set(1, 0, Rational(-3, 4));
  std::stringstream text;
  write_triplets(text, m);
  EXPECT_EQ(text.str(), "2 2 1\n1 0 -3/4\n");
  std::stringstream duplicate("2 2 2\n0 0 1\n0 0 2\n");
  EXPECT_THROW(read_triplets(duplicate), std::invalid_argument);
  std::stringstream zero("2 2 1\n0 0 0\n");
  EXPECT_THROW(read_triplets(zero), std::invalid_argument);
  std::stringstream outside("2 2 1\n2 0 1\n");
  EXPECT_THROW(read_triplets(outside), std::invalid_argument);
}

TEST(RankTest, Basics) {
  EXPECT_EQ(rank(identity(3)), 3u);
  EXPECT_EQ(rank(SparseRatMatrix(4, 5)), 0u);
  EXPECT_EQ(rank(SparseRatMatrix(0, 0)), 0u);
  EXPECT_EQ(rank(dense({{1, 2}, {2, 4}})), 1u);
  EXPECT_EQ(rank(dense({{Rational(1, 3), 1}, {1, 3}})), 1u);
}

TEST(RankTest, FourPointWdvvMatrix) {
  auto system = relation_system({4, 1, LocusPredicate::all()});
  ASSERT_EQ(system.matrix.rows(), 2);
  ASSERT_EQ(system.matrix.cols(), 8);
  // The third pairing difference is the difference of the other two.
  auto m = system.matrix;
  SparseRatMatrix::Row third = m.row(1);
  for (const auto& [c, v] : m.row(0)) third.emplace_back(c, -v);
  m.append_row(third);
  EXPECT_EQ(m.rows(), 3);
  EXPECT_EQ(rank(m), 2u);
}

TEST(RankTest, TransposeScalingAndPermutation) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    auto m = random_low_rank(30, 25, 3 + trial, rng);
    const auto r = rank(m);
    EXPECT_EQ(rank(m.transpose()), r);
    SparseRatMatrix shuffled(0, m.cols());
    std::vector<int> order(m.rows());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (int i : order) {
      auto row = m.row(i);
      const Rational scale = frac(1 + rng() % 7, 1 + rng() % 5);
      for (auto& [c, v] : row) v *= (i % 2 == 0 ? scale : Rational(-scale));
      shuffled.append_row(row);
    }
    EXPECT_EQ(rank(shuffled), r);
  }
}

TEST(RankTest, PivotStrategiesAgree) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    auto m = random_low_rank(50, 80, 10 + trial, rng);
    EXPECT_EQ(rank(m, {PivotStrategy::kMarkowitz, {}}), rank(m, {PivotStrategy::kNatural, {}}));
  }
}

TEST(RankTest, LargeEntriesLeaveMachineIntegers) {
  const Integer big = Integer(1) << 70;
  const Rational a(big + 1), b(big - 1), c(big * 3 + 7);
  // Third row = a * first + b * second: rank 2 only with exact arithmetic.
  auto m = dense({{1, c, 5}, {c, 1, Rational(1, 3)}, {a + b * c, a * c + b, a * 5 + b / 3}});
  EXPECT_EQ(rank(m), 2u);
  m.set(2, 2, m.at(2, 2) + 1);
  EXPECT_EQ(rank(m), 3u);
  const Rational huge(Integer(1) << 61);
  EXPECT_EQ(rank(dense({{huge, huge + 1}, {huge - 1, huge}})), 2u);
  EXPECT_EQ(rank(dense({{huge, huge * 2}, {huge * 3, huge * 6}})), 1u);
}

TEST(RankTest, StopCallbackAborts) {
  auto m = identity(20);
  RankOptions options;
  options.should_stop = [] { return true; };
  EXPECT_THROW(rank(m, options), RankAborted);
}

TEST(ModularRankTest, IdentityIsLowerBoundUntilConfirmed) {
  auto result = rank_modular(identity(3), 1);
  EXPECT_EQ(result.rank, 3u);
  EXPECT_EQ(result.certainty, RankCertainty::kLowerBound);
  ASSERT_EQ(result.primes.size(), 1u);
  EXPECT_TRUE(is_probable_prime(result.primes[0]));
  EXPECT_EQ(confirm_exact(identity(3), result).certainty, RankCertainty::kExact);
}

TEST(ModularRankTest, SkipsPrimesDividingDenominators) {
  const std::uint64_t p = 1000003, q = 998244353;
  ASSERT_TRUE(is_probable_prime(p));
  ASSERT_TRUE(is_probable_prime(q));
  auto m = dense({{Rational(1, p), 1}, {0, Rational(2, 3)}});
  const std::vector<std::uint64_t> primes{p, q};
  auto result = rank_modular(m, primes);
  EXPECT_EQ(result.skipped, 1u);
  EXPECT_EQ(result.primes, std::vector<std::uint64_t>{q});
  EXPECT_EQ(result.rank, 2u);
}

TEST(ModularRankTest, SmallPrimeCanOnlyUnderestimate) {
  auto m = dense({{1, 1}, {1, 8}});
  const std::vector<std::uint64_t> seven{7};
  EXPECT_EQ(rank_modular(m, seven).rank, 1u);
  EXPECT_EQ(rank(m), 2u);
}

TEST(ModularRankTest, PrimalityCheck) {
  EXPECT_FALSE(is_probable_prime(1));
  EXPECT_TRUE(is_probable_prime(2));
  EXPECT_FALSE(is_probable_prime(561));
  EXPECT_TRUE(is_probable_prime((1ULL << 61) - 1));
  EXPECT_FALSE(is_probable_prime((1ULL << 62) - 1));
}

TEST(ModularRankTest, NeverExceedsExactRank) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    auto m = random_low_rank(40, 30, 5 + trial, rng);
    auto result = rank_modular(m, 3, trial);
    EXPECT_LE(result.rank, rank(m));
    EXPECT_EQ(result.rank, rank(m));
  }
}

TEST(ModularRankTest, AgreesOnRelationMatrices) {
  const std::vector<std::tuple<int, int, LocusPredicate>> cases{
      {0, 5, LocusPredicate::all()}, {0, 8, LocusPredicate::all()},
      {4, 3, LocusPredicate::all()}, {5, 3, LocusPredicate::all()},
      {0, 8, LocusPredicate::max_nodes(3)}, {3, 4, LocusPredicate::semistable()},
  };
  for (const auto& [n, d, locus] : cases) {
    auto system = relation_system({n, d, locus});
    auto modular = confirm_exact(system.matrix, rank_modular(system.matrix, 2));
    EXPECT_EQ(modular.certainty, RankCertainty::kExact) << "n=" << n << " d=" << d;
  }
}

TEST(RowSpanTest, Examples) {
  auto m = dense({{1, 2, 0}, {2, 4, 0}});
  EXPECT_TRUE(in_row_span(m, m.row(0)));
  using Row = SparseRatMatrix::Row;
  EXPECT_TRUE(in_row_span(m, Row{{0, Rational(-1, 2)}, {1, -1}}));
  EXPECT_FALSE(in_row_span(m, Row{{2, 1}}));
  EXPECT_FALSE(in_row_span(m, Row{{0, 1}}));
  EXPECT_TRUE(in_row_span(m, Row{}));
}

TEST(RowSpanTest, KeyedVectors) {
  auto m = dense({{1, 0, 1}, {0, 1, 1}});
  m.set_column_keys({"x", "y", "z"});
  EXPECT_TRUE(in_row_span(m, std::map<std::string, Rational>{{"x", 2}, {"y", 1}, {"z", 3}}));
  EXPECT_FALSE(in_row_span(m, std::map<std::string, Rational>{{"z", 1}}));
  EXPECT_THROW(in_row_span(m, std::map<std::string, Rational>{{"w", 1}}), std::invalid_argument);
}

}  // namespace
}  // namespace chowzero
