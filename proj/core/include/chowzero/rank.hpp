#ifndef CHOWZERO_RANK_HPP_
#define CHOWZERO_RANK_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "chowzero/sparse_matrix.hpp"

namespace chowzero {

enum class PivotStrategy {
  kMarkowitz,  // sparsest column, then shortest row
  kNatural,    // columns left to right, first available row
};

struct RankOptions {
  PivotStrategy pivot = PivotStrategy::kMarkowitz;
  // Polled between pivots; returning true aborts with RankAborted.
  std::function<bool()> should_stop;
};

class RankAborted : public std::runtime_error {
 public:
  RankAborted() : std::runtime_error("rank computation stopped") {}
};

// Exact rank over the rationals by fraction-free sparse elimination.
std::size_t rank(const SparseRatMatrix& m, const RankOptions& options = {});

enum class RankCertainty { kLowerBound, kExact };

struct ModularRank {
  std::size_t rank = 0;
  RankCertainty certainty = RankCertainty::kLowerBound;
  std::vector<std::uint64_t> primes;  // primes actually used
  std::size_t skipped = 0;            // primes dividing some denominator
};

// Largest rank over reductions modulo `prime_count` random primes below
// 2^62 drawn from a seeded generator. Always a lower bound for the exact rank.
ModularRank rank_modular(const SparseRatMatrix& m, int prime_count,
                         std::uint64_t seed = 0x5eed5eedULL);

// Same with explicit primes; primes dividing a denominator are skipped.
ModularRank rank_modular(const SparseRatMatrix& m, std::span<const std::uint64_t> primes);

// Marks the result exact when it agrees with exact elimination.
ModularRank confirm_exact(const SparseRatMatrix& m, ModularRank result);

bool is_probable_prime(std::uint64_t value);

// True iff v (indexed by m's columns) is a rational combination of m's rows.
bool in_row_span(const SparseRatMatrix& m, const SparseRatMatrix::Row& v);
// Same, with v keyed by column key; throws std::invalid_argument for keys
// that do not name a column.
bool in_row_span(const SparseRatMatrix& m, const std::map<std::string, Rational>& keyed);

}  // namespace chowzero

#endif  // CHOWZERO_RANK_HPP_
