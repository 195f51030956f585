#pragma once

#include <cstddef>
#include <vector>

#include "sekit/matrix.hpp"

namespace sekit {

/// Square matrix of signed exact integers; the inputs here are typically
/// I - A for a non-negative A.
class IntMatrix {
 public:
  explicit IntMatrix(std::size_t n) : n_(n), e_(n * n, 0) {}
  IntMatrix(std::size_t n, std::vector<Int> entries);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);

  std::size_t size() const { return n_; }
  Int& at(std::size_t i, std::size_t j) { return e_[i * n_ + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<Int> e_;  // row-major
};

/// Exact Smith decomposition u * input * v == d with u, v unimodular and d
/// diagonal, non-negative, each entry dividing the next.
struct SnfResult {
  IntMatrix u;
  IntMatrix d;
  IntMatrix v;
};

/// Computes the Smith normal form by integer row/column reduction. The
/// identity u*m*v == d is re-verified before returning.
SnfResult smith_normal_form(const IntMatrix& m);

/// Coefficients of det(tI - m), ascending in t, exact over the integers
/// (Faddeev-LeVerrier with exact divisions).
std::vector<Int> char_poly(const IntMatrix& m);

Int determinant(const IntMatrix& m);

}  // namespace sekit
