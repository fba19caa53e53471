#ifndef CHOWZERO_SPARSE_MATRIX_HPP_
#define CHOWZERO_SPARSE_MATRIX_HPP_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "chowzero/rational.hpp"

namespace chowzero {

// Sparse matrix over the rationals. Rows are kept sorted by column with no
// stored zeros; columns may carry unique string keys.
class SparseRatMatrix {
 public:
  using Entry = std::pair<int, Rational>;
  using Row = std::vector<Entry>;

  SparseRatMatrix() = default;
  SparseRatMatrix(int rows, int cols);

  int rows() const { return static_cast<int>(rows_.size()); }
  int cols() const { return cols_; }
  std::size_t nnz() const;

  const Row& row(int r) const { return rows_.at(r); }

  // Overwrites one entry; a zero value removes it.
  void set(int row, int col, const Rational& value);
  Rational at(int row, int col) const;

  // Appends a row given in any column order; entries for the same column
  // are summed and zeros dropped. Returns the new row index.
  int append_row(Row entries);

  // Throws std::invalid_argument unless keys are unique and one per column.
  void set_column_keys(std::vector<std::string> keys);
  const std::vector<std::string>& column_keys() const { return column_keys_; }

  SparseRatMatrix transpose() const;

 private:
  void check_index(int row, int col) const;

  int cols_ = 0;
  std::vector<Row> rows_;
  std::vector<std::string> column_keys_;
};

// Coordinate text format: "rows cols nnz" then one "r c p/q" line per entry,
// zero-based, row-major order.
void write_triplets(std::ostream& out, const SparseRatMatrix& m);
SparseRatMatrix read_triplets(std::istream& in);

// Sidecar table: one "col<TAB>key" line per column.
void write_column_keys(std::ostream& out, const SparseRatMatrix& m);

}  // namespace chowzero

#endif  // CHOWZERO_SPARSE_MATRIX_HPP_
