#include "sekit/matrix.hpp"

#include <algorithm>
#include <utility>

namespace sekit {

namespace {

void check_label(const std::string& label) {
  if (label == "-") {
    throw std::invalid_argument("label '-' is reserved for the empty label");
  }
  for (char c : label) {
    if (c == '#' || c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      throw std::invalid_argument("label must not contain whitespace or '#'");
    }
  }
}

}  // namespace

CorrMatrix::CorrMatrix(std::size_t rows, std::size_t cols,
                       std::vector<Int> entries, std::string row_label,
                       std::string col_label)
    : row_label_(std::move(row_label)),
      col_label_(std::move(col_label)),
      rows_(rows),
      cols_(cols),
      entries_(std::move(entries)) {
  if (rows_ == 0 || cols_ == 0) {
    throw ShapeMismatch("matrix dimensions must be positive");
  }
  if (entries_.size() != rows_ * cols_) {
    throw ShapeMismatch("expected " + std::to_string(rows_ * cols_) +
                        " entries, got " + std::to_string(entries_.size()));
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i] < 0) {
      throw NegativeEntry("entry (" + std::to_string(i / cols_) + "," +
                          std::to_string(i % cols_) + ") is negative");
    }
  }
  check_label(row_label_);
  check_label(col_label_);
}

CorrMatrix CorrMatrix::from_rows(const std::vector<std::vector<long>>& rows,
                                 std::string row_label,
                                 std::string col_label) {
  if (rows.empty() || rows.front().empty()) {
    throw ShapeMismatch("matrix dimensions must be positive");
  }
  const std::size_t cols = rows.front().size();
  std::vector<Int> entries;
  entries.reserve(rows.size() * cols);
  for (const auto& row : rows) {
    if (row.size() != cols) {
      throw ShapeMismatch("ragged rows");
    }
    for (long v : row) entries.emplace_back(v);
  }
  return CorrMatrix(rows.size(), cols, std::move(entries),
                    std::move(row_label), std::move(col_label));
}

CorrMatrix CorrMatrix::identity(std::size_t n, const std::string& label) {
  std::vector<Int> entries(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) entries[i * n + i] = 1;
  return CorrMatrix(n, n, std::move(entries), label, label);
}

CorrMatrix CorrMatrix::zero(std::size_t rows, std::size_t cols,
                            std::string row_label, std::string col_label) {
  return CorrMatrix(rows, cols, std::vector<Int>(rows * cols, 0),
                    std::move(row_label), std::move(col_label));
}

bool CorrMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Int& v) { return v == 0; });
}

CorrMatrix CorrMatrix::transposed() const {
  std::vector<Int> entries(rows_ * cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      entries[j * rows_ + i] = at(i, j);
    }
  }
  return CorrMatrix(cols_, rows_, std::move(entries), col_label_, row_label_);
}

CorrMatrix CorrMatrix::relabeled(std::string row_label,
                                 std::string col_label) const {
  return CorrMatrix(rows_, cols_, entries_, std::move(row_label),
                    std::move(col_label));
}

CorrMatrix tensor(const CorrMatrix& x, const CorrMatrix& y) {
  if (x.col_label() != y.row_label()) {
    throw DimensionMismatch("tensor: left col label '" + x.col_label() +
                            "' != right row label '" + y.row_label() + "'");
  }
  if (x.cols() != y.rows()) {
    throw DimensionMismatch("tensor: " + std::to_string(x.cols()) +
                            " columns vs " + std::to_string(y.rows()) +
                            " rows");
  }
  const std::size_t a = x.rows(), b = x.cols(), c = y.cols();
  std::vector<Int> entries(a * c, 0);
  for (std::size_t i = 0; i < a; ++i) {
    for (std::size_t k = 0; k < b; ++k) {
      const Int& xv = x.at(i, k);
      if (xv == 0) continue;
      for (std::size_t j = 0; j < c; ++j) {
        entries[i * c + j] += xv * y.at(k, j);
      }
    }
  }
  return CorrMatrix(a, c, std::move(entries), x.row_label(), y.col_label());
}

CorrMatrix power(const CorrMatrix& e, std::size_t k) {
  if (!e.is_square()) {
    throw NotSquare("power: matrix is not square over a single vertex set");
  }
  CorrMatrix result = CorrMatrix::identity(e.rows(), e.row_label());
  for (std::size_t i = 0; i < k; ++i) result = tensor(result, e);
  return result;
}

CorrMatrix direct_sum(const CorrMatrix& x, const CorrMatrix& y) {
  const std::size_t rows = x.rows() + y.rows();
  const std::size_t cols = x.cols() + y.cols();
  std::vector<Int> entries(rows * cols, 0);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      entries[i * cols + j] = x.at(i, j);
    }
  }
  for (std::size_t i = 0; i < y.rows(); ++i) {
    for (std::size_t j = 0; j < y.cols(); ++j) {
      entries[(x.rows() + i) * cols + (x.cols() + j)] = y.at(i, j);
    }
  }
  return CorrMatrix(rows, cols, std::move(entries),
                    sum_label(x.row_label(), y.row_label()),
                    sum_label(x.col_label(), y.col_label()));
}

std::vector<std::size_t> col_support(const CorrMatrix& e) {
  std::vector<std::size_t> support;
  for (std::size_t j = 0; j < e.cols(); ++j) {
    for (std::size_t i = 0; i < e.rows(); ++i) {
      if (e.at(i, j) != 0) {
        support.push_back(j);
        break;
      }
    }
  }
  return support;
}

StructureFlags classify(const CorrMatrix& e) {
  if (!e.is_square()) {
    throw NotSquare("classify: matrix is not square over a single vertex set");
  }
  bool zero_row = false, zero_col = false;
  for (std::size_t i = 0; i < e.rows() && !zero_row; ++i) {
    bool all_zero = true;
    for (std::size_t j = 0; j < e.cols(); ++j) {
      if (e.at(i, j) != 0) {
        all_zero = false;
        break;
      }
    }
    zero_row = all_zero;
  }
  for (std::size_t j = 0; j < e.cols() && !zero_col; ++j) {
    bool all_zero = true;
    for (std::size_t i = 0; i < e.rows(); ++i) {
      if (e.at(i, j) != 0) {
        all_zero = false;
        break;
      }
    }
    zero_col = all_zero;
  }
  StructureFlags flags;
  flags.full = !zero_col;
  flags.nondegenerate = !zero_row;
  flags.regular = flags.full && flags.nondegenerate;
  return flags;
}

bool is_permutation_matrix(const CorrMatrix& m) {
  if (m.rows() != m.cols()) return false;
  const std::size_t n = m.rows();
  std::vector<bool> col_used(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t ones = 0, one_col = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const Int& v = m.at(i, j);
      if (v == 0) continue;
      if (v != 1) return false;
      ++ones;
      one_col = j;
    }
    if (ones != 1 || col_used[one_col]) return false;
    col_used[one_col] = true;
  }
  return true;
}

std::string sum_label(const std::string& a, const std::string& b) {
  if (a.empty() && b.empty()) return "";
  return a + "+" + b;
}

}  // namespace sekit
