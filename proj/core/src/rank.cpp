#include "chowzero/rank.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <set>

namespace chowzero {
namespace {

template <class V>
struct Row {
  std::vector<int> cols;
  std::vector<V> vals;

  int find(int c) const {
    auto it = std::lower_bound(cols.begin(), cols.end(), c);
    return it != cols.end() && *it == c ? static_cast<int>(it - cols.begin()) : -1;
  }
};

class Overflow : public std::exception {};

// Fraction-free integer arithmetic on machine words; throws Overflow when a
// result leaves the int64 range.
struct WordOps {
  using Value = std::int64_t;

  static Value narrow(__int128 x) {
    if (x > std::numeric_limits<Value>::max() || x < std::numeric_limits<Value>::min()) {
      throw Overflow();
    }
    return static_cast<Value>(x);
  }
  // Multipliers (for row, for pivot) so that the pivot column cancels.
  std::pair<Value, Value> multipliers(Value pivot, Value entry) const {
    Value g = std::gcd(pivot, entry);
    return {pivot / g, entry / g};
  }
  Value scale(Value s, Value x) const { return narrow(static_cast<__int128>(s) * x); }
  Value mix(Value s, Value x, Value t, Value y) const {
    return narrow(static_cast<__int128>(s) * x - static_cast<__int128>(t) * y);
  }
  void finish(Row<Value>& row) const {
    Value g = 0;
    for (Value v : row.vals) {
      g = std::gcd(g, v);
      if (g == 1) return;
    }
    if (g > 1) {
      for (Value& v : row.vals) v /= g;
    }
  }
};

struct BigOps {
  using Value = Integer;

  std::pair<Value, Value> multipliers(const Value& pivot, const Value& entry) const {
    Value g = gcd(pivot, entry);
    return {pivot / g, entry / g};
  }
  Value scale(const Value& s, const Value& x) const { return s * x; }
  Value mix(const Value& s, const Value& x, const Value& t, const Value& y) const {
    return s * x - t * y;
  }
  void finish(Row<Value>& row) const {
    Value g = 0;
    for (const Value& v : row.vals) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
      if (g == 1) return;
    }
    if (g > 1) {
      for (Value& v : row.vals) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    }
  }
};

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (exp) {
    if (exp & 1) result = mul_mod(result, base, p);
    base = mul_mod(base, base, p);
    exp >>= 1;
  }
  return result;
}

struct ModOps {
  using Value = std::uint64_t;
  std::uint64_t p;

  std::pair<Value, Value> multipliers(Value pivot, Value entry) const {
    return {1, mul_mod(entry, pow_mod(pivot, p - 2, p), p)};
  }
  Value scale(Value s, Value x) const { return mul_mod(s, x, p); }
  Value mix(Value s, Value x, Value t, Value y) const {
    Value a = mul_mod(s, x, p);
    Value b = mul_mod(t, y, p);
    return a >= b ? a - b : a + (p - b);
  }
  void finish(Row<Value>&) const {}
};

template <class V>
bool is_zero(const V& v) {
  return v == 0;
}

template <class Ops>
class Eliminator {
 public:
  using V = typename Ops::Value;

  Eliminator(Ops ops, std::vector<Row<V>> rows, int cols, const RankOptions& options)
      : ops_(std::move(ops)), rows_(std::move(rows)), options_(options) {
    alive_.assign(rows_.size(), 1);
    col_rows_.assign(cols, {});
    count_.assign(cols, 0);
    stamp_.assign(rows_.size(), 0);
    for (int r = 0; r < static_cast<int>(rows_.size()); ++r) {
      if (rows_[r].cols.empty()) alive_[r] = 0;
      for (int c : rows_[r].cols) {
        col_rows_[c].push_back(r);
        ++count_[c];
      }
    }
  }

  std::size_t run() {
    std::size_t rank = 0;
    const int cols = static_cast<int>(count_.size());
    if (options_.pivot == PivotStrategy::kNatural) {
      for (int c = 0; c < cols; ++c) {
        poll(rank);
        if (count_[c] > 0 && pivot_on(c)) ++rank;
      }
      return rank;
    }
    using Item = std::pair<int, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    for (int c = 0; c < cols; ++c) {
      if (count_[c] > 0) heap.emplace(count_[c], c);
    }
    touched_ = &heap;
    while (!heap.empty()) {
      auto [cnt, c] = heap.top();
      heap.pop();
      if (cnt != count_[c] || cnt == 0) continue;
      poll(rank);
      if (pivot_on(c)) ++rank;
    }
    touched_ = nullptr;
    return rank;
  }

 private:
  void poll(std::size_t steps) {
    if (options_.should_stop && steps % 64 == 0 && options_.should_stop()) throw RankAborted();
  }

  void adjust(int c, int delta) {
    count_[c] += delta;
    if (touched_ && count_[c] > 0) touched_->emplace(count_[c], c);
  }

  // Rows currently holding column c, in increasing index order.
  std::vector<int> holders(int c) {
    ++epoch_;
    std::vector<int> out;
    for (int r : col_rows_[c]) {
      if (!alive_[r] || stamp_[r] == epoch_ || rows_[r].find(c) < 0) continue;
      stamp_[r] = epoch_;
      out.push_back(r);
    }
    std::sort(out.begin(), out.end());
    col_rows_[c] = out;
    return out;
  }

  bool pivot_on(int c) {
    auto rows = holders(c);
    if (rows.empty()) return false;
    int pivot = rows.front();
    if (options_.pivot == PivotStrategy::kMarkowitz) {
      for (int r : rows) {
        if (rows_[r].cols.size() < rows_[pivot].cols.size()) pivot = r;
      }
    }
    const Row<V>& p = rows_[pivot];
    const V pv = p.vals[p.find(c)];
    for (int r : rows) {
      if (r != pivot) reduce(r, p, pv, c);
    }
    alive_[pivot] = 0;
    for (int k : p.cols) adjust(k, -1);
    return true;
  }

  void reduce(int r, const Row<V>& p, const V& pv, int c) {
    Row<V>& row = rows_[r];
    auto [s, t] = ops_.multipliers(pv, row.vals[row.find(c)]);
    Row<V> next;
    next.cols.reserve(row.cols.size() + p.cols.size());
    next.vals.reserve(row.cols.size() + p.cols.size());
    std::size_t i = 0;
    std::size_t j = 0;
    const V zero{0};
    while (i < row.cols.size() || j < p.cols.size()) {
      const int ci = i < row.cols.size() ? row.cols[i] : std::numeric_limits<int>::max();
      const int cj = j < p.cols.size() ? p.cols[j] : std::numeric_limits<int>::max();
      if (ci < cj) {
        next.cols.push_back(ci);
        next.vals.push_back(ops_.scale(s, row.vals[i++]));
      } else if (cj < ci) {
        V v = ops_.mix(s, zero, t, p.vals[j++]);
        next.cols.push_back(cj);
        next.vals.push_back(std::move(v));
        adjust(cj, +1);
        col_rows_[cj].push_back(r);
      } else {
        V v = ops_.mix(s, row.vals[i++], t, p.vals[j++]);
        if (is_zero(v)) {
          adjust(ci, -1);
        } else {
          next.cols.push_back(ci);
          next.vals.push_back(std::move(v));
        }
      }
    }
    ops_.finish(next);
    row = std::move(next);
    if (row.cols.empty()) alive_[r] = 0;
  }

  Ops ops_;
  std::vector<Row<V>> rows_;
  const RankOptions& options_;
  std::vector<char> alive_;
  std::vector<std::vector<int>> col_rows_;
  std::vector<int> count_;
  std::vector<unsigned> stamp_;
  unsigned epoch_ = 0;
  std::priority_queue<std::pair<int, int>, std::vector<std::pair<int, int>>, std::greater<>>*
      touched_ = nullptr;
};

// Each row scaled to a primitive integer vector.
std::vector<Row<Integer>> integer_rows(const SparseRatMatrix& m) {
  std::vector<Row<Integer>> out;
  out.reserve(m.rows());
  for (int r = 0; r < m.rows(); ++r) {
    Integer lcm = 1;
    for (const auto& [c, v] : m.row(r)) {
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
    }
    Row<Integer> row;
    for (const auto& [c, v] : m.row(r)) {
      row.cols.push_back(c);
      row.vals.push_back(v.get_num() * (lcm / v.get_den()));
    }
    BigOps{}.finish(row);
    out.push_back(std::move(row));
  }
  return out;
}

std::optional<std::vector<Row<std::int64_t>>> word_rows(const std::vector<Row<Integer>>& rows) {
  // Identical primitive rows (up to sign) add nothing to the rank.
  std::set<std::pair<std::vector<int>, std::vector<std::int64_t>>> seen;
  std::vector<Row<std::int64_t>> out;
  for (const auto& row : rows) {
    Row<std::int64_t> small{row.cols, {}};
    for (const auto& v : row.vals) {
      if (!v.fits_slong_p()) return std::nullopt;
      small.vals.push_back(v.get_si());
    }
    if (!small.vals.empty() && small.vals.front() < 0) {
      for (auto& v : small.vals) v = -v;
    }
    if (seen.emplace(small.cols, small.vals).second) out.push_back(std::move(small));
  }
  return out;
}

}  // namespace

std::size_t rank(const SparseRatMatrix& m, const RankOptions& options) {
  auto big = integer_rows(m);
  if (auto small = word_rows(big)) {
    try {
      return Eliminator<WordOps>(WordOps{}, std::move(*small), m.cols(), options).run();
    } catch (const Overflow&) {
      // Entries outgrew machine words; redo the whole matrix exactly.
    }
  }
  return Eliminator<BigOps>(BigOps{}, std::move(big), m.cols(), options).run();
}

bool is_probable_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  // These bases are deterministic for every 64-bit input.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

ModularRank rank_modular(const SparseRatMatrix& m, std::span<const std::uint64_t> primes) {
  ModularRank result;
  for (std::uint64_t p : primes) {
    std::vector<Row<std::uint64_t>> rows;
    bool usable = true;
    for (int r = 0; r < m.rows() && usable; ++r) {
      Row<std::uint64_t> row;
      for (const auto& [c, v] : m.row(r)) {
        const std::uint64_t den = mpz_fdiv_ui(v.get_den_mpz_t(), p);
        if (den == 0) {
          usable = false;
          break;
        }
        const std::uint64_t num = mpz_fdiv_ui(v.get_num_mpz_t(), p);
        const std::uint64_t value = mul_mod(num, pow_mod(den, p - 2, p), p);
        if (value == 0) continue;
        row.cols.push_back(c);
        row.vals.push_back(value);
      }
      rows.push_back(std::move(row));
    }
    if (!usable) {
      ++result.skipped;
      continue;
    }
    RankOptions options;
    const auto r = Eliminator<ModOps>(ModOps{p}, std::move(rows), m.cols(), options).run();
    result.rank = std::max(result.rank, r);
    result.primes.push_back(p);
  }
  return result;
}

ModularRank rank_modular(const SparseRatMatrix& m, int prime_count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> primes;
  while (static_cast<int>(primes.size()) < prime_count) {
    std::uint64_t candidate = (rng() >> 2) | (std::uint64_t{1} << 61) | 1;
    if (is_probable_prime(candidate)) primes.push_back(candidate);
  }
  return rank_modular(m, primes);
}

ModularRank confirm_exact(const SparseRatMatrix& m, ModularRank result) {
  if (rank(m) == result.rank) result.certainty = RankCertainty::kExact;
  return result;
}

bool in_row_span(const SparseRatMatrix& m, const std::map<std::string, Rational>& keyed) {
  const auto& keys = m.column_keys();
  SparseRatMatrix::Row v;
  for (const auto& [key, value] : keyed) {
    auto it = std::find(keys.begin(), keys.end(), key);
    if (it == keys.end()) throw std::invalid_argument("vector key '" + key + "' is not a column");
    v.emplace_back(static_cast<int>(it - keys.begin()), value);
  }
  return in_row_span(m, v);
}

bool in_row_span(const SparseRatMatrix& m, const SparseRatMatrix::Row& v) {
  SparseRatMatrix extended = m;
  for (const auto& [c, value] : v) {
    if (c < 0 || c >= m.cols()) throw std::invalid_argument("vector column out of range");
  }
  extended.append_row(v);
  return rank(extended) == rank(m);
}

}  // namespace chowzero
