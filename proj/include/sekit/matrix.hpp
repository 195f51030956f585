#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

#include "sekit/errors.hpp"

namespace sekit {

/// Exact arbitrary-precision integer. Matrix entries are always >= 0;
/// signed values appear only in derived objects such as I - A.
using Int = mpz_class;

/// A rectangular matrix of non-negative integers with row/column vertex-set
/// labels. The labels are opaque identifiers compared by equality; they keep
/// matrices over different vertex sets from being composed by accident.
///
/// A matrix is "square" in the correspondence sense only when rows == cols
/// AND row_label == col_label. Values are immutable after construction and
/// safe to share across threads.
class CorrMatrix {
 public:
  CorrMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries,
             std::string row_label = "", std::string col_label = "");

  /// Convenience builder from nested rows of machine integers.
  static CorrMatrix from_rows(const std::vector<std::vector<long>>& rows,
                              std::string row_label = "",
                              std::string col_label = "");

  static CorrMatrix identity(std::size_t n, const std::string& label = "");
  static CorrMatrix zero(std::size_t rows, std::size_t cols,
                         std::string row_label = "",
                         std::string col_label = "");

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::string& row_label() const { return row_label_; }
  const std::string& col_label() const { return col_label_; }
  const std::vector<Int>& entries() const { return entries_; }

  const Int& at(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  /// rows == cols and a single vertex-set label on both sides.
  bool is_square() const {
    return rows_ == cols_ && row_label_ == col_label_;
  }

  bool is_zero() const;

  /// Transpose with swapped labels (the dual correspondence of a
  /// permutation witness).
  CorrMatrix transposed() const;

  /// Same entries under fresh labels.
  CorrMatrix relabeled(std::string row_label, std::string col_label) const;

  friend bool operator==(const CorrMatrix& a, const CorrMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.row_label_ == b.row_label_ && a.col_label_ == b.col_label_ &&
           a.entries_ == b.entries_;
  }
  friend bool operator!=(const CorrMatrix& a, const CorrMatrix& b) {
    return !(a == b);
  }

 private:
  std::string row_label_;
  std::string col_label_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Int> entries_;  // row-major
};

/// Structural flags of a square matrix, read off the zero rows/columns:
/// full <=> no zero column, nondegenerate <=> no zero row, regular <=> both
/// (a finite graph with no sinks and no sources).
struct StructureFlags {
  bool regular = false;
  bool full = false;
  bool nondegenerate = false;

  friend bool operator==(const StructureFlags&, const StructureFlags&) =
      default;
};

/// Interior tensor product of composable matrices, i.e. the matrix product
/// x*y. Requires x.col_label == y.row_label and x.cols == y.rows.
CorrMatrix tensor(const CorrMatrix& x, const CorrMatrix& y);

/// k-th tensor power of a square matrix; k = 0 yields the identity
/// correspondence with e's labels.
CorrMatrix power(const CorrMatrix& e, std::size_t k);

/// Block-diagonal sum over the concatenated vertex sets; labels of the
/// result are the concatenation of the operands' labels.
CorrMatrix direct_sum(const CorrMatrix& x, const CorrMatrix& y);

/// Sorted indices of columns that contain a nonzero entry.
std::vector<std::size_t> col_support(const CorrMatrix& e);

StructureFlags classify(const CorrMatrix& e);

/// True iff m is 0/1 with exactly one 1 per row and per column. Labels may
/// differ (a vertex bijection between two sets).
bool is_permutation_matrix(const CorrMatrix& m);

/// Label of a concatenated vertex set. Empty + empty stays empty.
std::string sum_label(const std::string& a, const std::string& b);

}  // namespace sekit
