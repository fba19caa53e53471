#ifndef CHOWZERO_ENGINE_HPP_
#define CHOWZERO_ENGINE_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chowzero/locus.hpp"
#include "chowzero/rational.hpp"
#include "chowzero/sparse_matrix.hpp"
#include "chowzero/strata.hpp"

namespace chowzero {

class ResultCache;

// Bumped whenever enumeration order or relation generation changes, so
// that cached results from older builds are never reused.
inline constexpr int kAlgorithmRevision = 1;

enum class Provenance { kExact, kModularConfirmed };
const char* to_string(Provenance p);
Provenance parse_provenance(const std::string& text);

struct ChowQuery {
  int n = 0;
  int degree = 0;
  LocusPredicate locus = LocusPredicate::all();
};

struct ChowResult {
  int n = 0;
  int degree = 0;
  std::string locus;
  std::size_t generators = 0;
  std::size_t relation_rank = 0;
  std::size_t dimension = 0;
  Provenance provenance = Provenance::kExact;
  double seconds = 0;  // wall time of the computation; never serialized
};

struct EngineLimits {
  double max_seconds = 0;          // per cell; 0 means unlimited
  std::size_t max_generators = 0;  // 0 means unlimited
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The locus basis and the WDVV relations projected onto it, as a matrix
// whose column keys name the basis strata.
struct RelationSystem {
  std::vector<NormalFormStratum> basis;
  SparseRatMatrix matrix;
};

// Throws std::invalid_argument when the locus is not closed under edge
// contraction up to `degree` edges and BudgetExceeded when limits trip.
RelationSystem relation_system(const ChowQuery& q, const EngineLimits& limits = {});

ChowResult chow_rank(const ChowQuery& q, const EngineLimits& limits = {});

struct RunOptions {
  EngineLimits limits;
  int jobs = 1;
  ResultCache* cache = nullptr;
  // Reject any result whose provenance is not exact elimination.
  bool exact_only = false;
};

// Cell-wise results; an empty optional marks a cell skipped by a budget.
struct HilbertTable {
  int n = 0;
  std::string locus;
  std::vector<std::optional<ChowResult>> coefficients;  // degree 0..dmax
  bool budget_exhausted() const;
};

HilbertTable hilbert_coeffs(int n, const LocusPredicate& locus, int dmax,
                            const RunOptions& options = {});

struct RankTable {
  std::vector<int> ns;
  std::vector<int> ds;
  std::string locus;
  std::vector<std::optional<ChowResult>> cells;  // row-major in (d, n)

  const std::optional<ChowResult>& at(int d_index, int n_index) const {
    return cells.at(d_index * ns.size() + n_index);
  }
  bool budget_exhausted() const;
};

RankTable rank_table(const std::vector<int>& ns, const std::vector<int>& ds,
                     const LocusPredicate& locus, const RunOptions& options = {});

// Rows are degrees, columns are n; skipped cells stay empty.
std::string to_tsv(const RankTable& table);
// JSON array of result records in (d, n) order.
std::string to_json(const RankTable& table);
std::string to_tsv(const HilbertTable& table);
std::string to_json(const HilbertTable& table);

}  // namespace chowzero

#endif  // CHOWZERO_ENGINE_HPP_
