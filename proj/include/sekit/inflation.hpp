#pragma once

#include "sekit/matrix.hpp"

namespace sekit {

/// The bipartite inflation [[0,R],[S,0]] of S by R, with the block structure
/// retained. R is a x b (A -> B) and S is b x a (B -> A); the materialized
/// square matrix lives over the concatenated vertex set A+B.
class InflationSquare {
 public:
  InflationSquare(CorrMatrix r, CorrMatrix s);

  const CorrMatrix& r_block() const { return r_; }
  const CorrMatrix& s_block() const { return s_; }
  std::size_t size() const { return r_.rows() + r_.cols(); }

  /// The full (a+b) x (a+b) matrix with exact zero off-blocks.
  CorrMatrix materialize() const;

 private:
  CorrMatrix r_;
  CorrMatrix s_;
};

InflationSquare bipartite_inflation(const CorrMatrix& r, const CorrMatrix& s);

/// n-th tensor power of the inflation by its closed form:
/// even n = 2k is block-diag((RS)^k, (SR)^k), odd n = 2k+1 has anti-diagonal
/// blocks (RS)^k*R and (SR)^k*S. Equals power(materialize(x), n).
CorrMatrix inflation_power(const InflationSquare& x, std::size_t n);

}  // namespace sekit
