#include "chowzero/engine.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <sstream>
#include <exception>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "chowzero/cache.hpp"
#include "chowzero/json_io.hpp"
#include "chowzero/rank.hpp"
#include "chowzero/relations.hpp"

namespace chowzero {
namespace {

using Clock = std::chrono::steady_clock;

class Deadline {
 public:
  explicit Deadline(double seconds)
      : active_(seconds > 0),
        end_(Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                std::chrono::duration<double>(seconds))) {}
  bool passed() const { return active_ && Clock::now() > end_; }

 private:
  bool active_;
  Clock::time_point end_;
};

std::string stratum_column_key(const NormalFormStratum& s) {
  std::string key = s.key.text + "#";
  for (std::size_t i = 0; i < s.exps.size(); ++i) {
    if (i) key += ',';
    key += std::to_string(s.exps[i]);
  }
  return key;
}

RelationSystem build_system(const ChowQuery& q, const EngineLimits& limits,
                            const Deadline& deadline) {
  if (q.n < 0 || q.degree < 0) throw std::invalid_argument("n and d must be nonnegative");
  if (!verify_locus(q.locus, q.n, q.degree)) {
    throw std::invalid_argument("locus '" + q.locus.name() + "' is not closed under contraction");
  }
  RelationSystem system;
  system.basis = enumerate_basis(q.n, q.degree, q.locus);
  if (limits.max_generators && system.basis.size() > limits.max_generators) {
    throw BudgetExceeded("generator count " + std::to_string(system.basis.size()) +
                         " exceeds --max-generators");
  }
  std::unordered_map<NormalFormStratum, int, StratumHash> column;
  std::vector<std::string> keys;
  for (const auto& s : system.basis) {
    column.emplace(s, static_cast<int>(keys.size()));
    keys.push_back(stratum_column_key(s));
  }
  system.matrix = SparseRatMatrix(0, static_cast<int>(keys.size()));
  system.matrix.set_column_keys(std::move(keys));
  // A glued term contracts back onto its base graph along the new edge, so
  // for a contraction-closed locus only bases inside the locus contribute.
  std::size_t rows = 0;
  for_each_wdvv_row(q.n, q.degree, q.locus, [&](const WdvvRow& row) {
    if (++rows % 256 == 0 && deadline.passed()) throw BudgetExceeded("time limit reached");
    SparseRatMatrix::Row entries;
    for (const auto& t : row.terms) {
      auto it = column.find(t.stratum);
      if (it != column.end()) {
        entries.emplace_back(it->second, Rational(t.sign));
      } else if (q.locus(t.stratum.graph)) {
        throw std::logic_error("relation term missing from the basis");
      }
    }
    if (!entries.empty()) system.matrix.append_row(std::move(entries));
  });
  return system;
}

template <class Cell>
void run_cells(std::size_t count, int jobs, const Cell& cell) {
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(count, static_cast<std::size_t>(std::max(jobs, 1))));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        cell(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

std::optional<ChowResult> cached_rank(const ChowQuery& q, const RunOptions& options) {
  const CacheKey key{q.n, q.degree, q.locus.name()};
  if (options.cache) {
    if (auto hit = options.cache->get(key)) {
      if (!options.exact_only || hit->provenance == Provenance::kExact) return hit;
    }
  }
  try {
    auto result = chow_rank(q, options.limits);
    if (options.exact_only && result.provenance != Provenance::kExact) {
      throw std::logic_error("non-exact result under exact-only mode");
    }
    if (options.cache) options.cache->put(key, result);
    return result;
  } catch (const BudgetExceeded&) {
    return std::nullopt;
  }
}

std::string cell_text(const std::optional<ChowResult>& r) {
  return r ? std::to_string(r->dimension) : std::string();
}

std::string skipped_json(int n, int d, const std::string& locus) {
  std::ostringstream out;
  out << "{\"n\":" << n << ",\"d\":" << d << ",\"locus\":\"" << locus
      << "\",\"skipped\":\"budget\"}";
  return out.str();
}

}  // namespace

const char* to_string(Provenance p) {
  return p == Provenance::kExact ? "exact" : "modular-confirmed";
}

Provenance parse_provenance(const std::string& text) {
  if (text == "exact") return Provenance::kExact;
  if (text == "modular-confirmed") return Provenance::kModularConfirmed;
  throw std::invalid_argument("unknown provenance '" + text + "'");
}

RelationSystem relation_system(const ChowQuery& q, const EngineLimits& limits) {
  return build_system(q, limits, Deadline(limits.max_seconds));
}

ChowResult chow_rank(const ChowQuery& q, const EngineLimits& limits) {
  const auto start = Clock::now();
  const Deadline deadline(limits.max_seconds);
  auto system = build_system(q, limits, deadline);
  RankOptions options;
  if (limits.max_seconds > 0) options.should_stop = [&] { return deadline.passed(); };
  std::size_t relation_rank = 0;
  try {
    relation_rank = rank(system.matrix, options);
  } catch (const RankAborted&) {
    throw BudgetExceeded("time limit reached during elimination");
  }
  ChowResult r;
  r.n = q.n;
  r.degree = q.degree;
  r.locus = q.locus.name();
  r.generators = system.basis.size();
  r.relation_rank = relation_rank;
  if (relation_rank > r.generators) throw std::logic_error("relation rank exceeds generator count");
  r.dimension = r.generators - relation_rank;
  r.provenance = Provenance::kExact;
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

bool HilbertTable::budget_exhausted() const {
  for (const auto& c : coefficients) {
    if (!c) return true;
  }
  return false;
}

bool RankTable::budget_exhausted() const {
  for (const auto& c : cells) {
    if (!c) return true;
  }
  return false;
}

HilbertTable hilbert_coeffs(int n, const LocusPredicate& locus, int dmax,
                            const RunOptions& options) {
  if (dmax < 0) throw std::invalid_argument("dmax must be nonnegative");
  HilbertTable table{n, locus.name(), std::vector<std::optional<ChowResult>>(dmax + 1)};
  run_cells(table.coefficients.size(), options.jobs, [&](std::size_t d) {
    table.coefficients[d] = cached_rank({n, static_cast<int>(d), locus}, options);
  });
  return table;
}

RankTable rank_table(const std::vector<int>& ns, const std::vector<int>& ds,
                     const LocusPredicate& locus, const RunOptions& options) {
  if (ns.empty() || ds.empty()) throw std::invalid_argument("empty table range");
  RankTable table{ns, ds, locus.name(), std::vector<std::optional<ChowResult>>(ns.size() * ds.size())};
  // Larger cells first keeps workers busy until the end.
  std::vector<std::size_t> order(table.cells.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = order.size() - 1 - i;
  run_cells(order.size(), options.jobs, [&](std::size_t k) {
    const std::size_t i = order[k];
    const int d = ds[i / ns.size()];
    const int n = ns[i % ns.size()];
    table.cells[i] = cached_rank({n, d, locus}, options);
  });
  return table;
}

std::string to_tsv(const RankTable& table) {
  std::ostringstream out;
  out << "d\\n";
  for (int n : table.ns) out << '\t' << n;
  out << '\n';
  for (std::size_t di = 0; di < table.ds.size(); ++di) {
    out << table.ds[di];
    for (std::size_t ni = 0; ni < table.ns.size(); ++ni) {
      out << '\t' << cell_text(table.at(static_cast<int>(di), static_cast<int>(ni)));
    }
    out << '\n';
  }
  return out.str();
}

std::string to_json(const RankTable& table) {
  std::ostringstream out;
  out << "[";
  bool first = true;
  for (std::size_t di = 0; di < table.ds.size(); ++di) {
    for (std::size_t ni = 0; ni < table.ns.size(); ++ni) {
      out << (first ? "\n" : ",\n");
      first = false;
      const auto& cell = table.at(static_cast<int>(di), static_cast<int>(ni));
      out << (cell ? result_to_json(*cell) : skipped_json(table.ns[ni], table.ds[di], table.locus));
    }
  }
  out << "\n]\n";
  return out.str();
}

std::string to_tsv(const HilbertTable& table) {
  std::ostringstream out;
  out << "d\tdim\n";
  for (std::size_t d = 0; d < table.coefficients.size(); ++d) {
    out << d << '\t' << cell_text(table.coefficients[d]) << '\n';
  }
  return out.str();
}

std::string to_json(const HilbertTable& table) {
  std::ostringstream out;
  out << "[";
  for (std::size_t d = 0; d < table.coefficients.size(); ++d) {
    out << (d ? ",\n" : "\n");
    const auto& cell = table.coefficients[d];
    out << (cell ? result_to_json(*cell) : skipped_json(table.n, static_cast<int>(d), table.locus));
  }
  out << "\n]\n";
  return out.str();
}

}  // namespace chowzero
