#include "chowzero/sparse_matrix.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace chowzero {

SparseRatMatrix::SparseRatMatrix(int rows, int cols) : cols_(cols), rows_(rows) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
}

std::size_t SparseRatMatrix::nnz() const {
  std::size_t total = 0;
  for (const auto& r : rows_) total += r.size();
  return total;
}

void SparseRatMatrix::check_index(int row, int col) const {
  if (row < 0 || row >= rows() || col < 0 || col >= cols_) {
    throw std::out_of_range("matrix index out of range");
  }
}

void SparseRatMatrix::set(int row, int col, const Rational& value) {
  check_index(row, col);
  auto& r = rows_[row];
  auto it = std::lower_bound(r.begin(), r.end(), col,
                             [](const Entry& e, int c) { return e.first < c; });
  const bool present = it != r.end() && it->first == col;
  if (value == 0) {
    if (present) r.erase(it);
  } else if (present) {
    it->second = value;
  } else {
    r.insert(it, {col, value});
  }
}

Rational SparseRatMatrix::at(int row, int col) const {
  check_index(row, col);
  const auto& r = rows_[row];
  auto it = std::lower_bound(r.begin(), r.end(), col,
                             [](const Entry& e, int c) { return e.first < c; });
  return it != r.end() && it->first == col ? it->second : Rational(0);
}

int SparseRatMatrix::append_row(Row entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  Row merged;
  for (auto& [col, value] : entries) {
    if (col < 0 || col >= cols_) throw std::out_of_range("column out of range");
    if (!merged.empty() && merged.back().first == col) {
      merged.back().second += value;
    } else {
      merged.emplace_back(col, std::move(value));
    }
  }
  std::erase_if(merged, [](const Entry& e) { return e.second == 0; });
  rows_.push_back(std::move(merged));
  return rows() - 1;
}

void SparseRatMatrix::set_column_keys(std::vector<std::string> keys) {
  if (static_cast<int>(keys.size()) != cols_) {
    throw std::invalid_argument("column key count does not match column count");
  }
  std::set<std::string> unique(keys.begin(), keys.end());
  if (unique.size() != keys.size()) throw std::invalid_argument("duplicate column key");
  column_keys_ = std::move(keys);
}

SparseRatMatrix SparseRatMatrix::transpose() const {
  SparseRatMatrix t(cols_, rows());
  for (int r = 0; r < rows(); ++r) {
    for (const auto& [c, v] : rows_[r]) t.rows_[c].emplace_back(r, v);
  }
  return t;
}

void write_triplets(std::ostream& out, const SparseRatMatrix& m) {
  out << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
  for (int r = 0; r < m.rows(); ++r) {
    for (const auto& [c, v] : m.row(r)) out << r << ' ' << c << ' ' << to_fraction_string(v) << '\n';
  }
}

SparseRatMatrix read_triplets(std::istream& in) {
  long long rows = -1;
  long long cols = -1;
  long long nnz = -1;
  if (!(in >> rows >> cols >> nnz) || rows < 0 || cols < 0 || nnz < 0) {
    throw std::invalid_argument("bad triplet header");
  }
  SparseRatMatrix m(static_cast<int>(rows), static_cast<int>(cols));
  std::set<std::pair<long long, long long>> seen;
  for (long long i = 0; i < nnz; ++i) {
    long long r = 0;
    long long c = 0;
    std::string value;
    if (!(in >> r >> c >> value)) throw std::invalid_argument("truncated triplet data");
    if (r < 0 || r >= rows || c < 0 || c >= cols) {
      throw std::invalid_argument("triplet entry outside the matrix");
    }
    if (!seen.emplace(r, c).second) throw std::invalid_argument("duplicate triplet entry");
    auto q = parse_rational(value);
    if (q == 0) throw std::invalid_argument("stored zero in triplet data");
    m.set(static_cast<int>(r), static_cast<int>(c), q);
  }
  return m;
}

void write_column_keys(std::ostream& out, const SparseRatMatrix& m) {
  for (std::size_t c = 0; c < m.column_keys().size(); ++c) {
    out << c << '\t' << m.column_keys()[c] << '\n';
  }
}

}  // namespace chowzero
