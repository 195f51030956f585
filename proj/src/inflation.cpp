#include "sekit/inflation.hpp"

#include <utility>

namespace sekit {

namespace {

/// Places src into dst (dims rows x cols, row-major) at block offset (r0, c0).
void place_block(std::vector<Int>& dst, std::size_t cols, const CorrMatrix& src,
                 std::size_t r0, std::size_t c0) {
  for (std::size_t i = 0; i < src.rows(); ++i) {
    for (std::size_t j = 0; j < src.cols(); ++j) {
      dst[(r0 + i) * cols + (c0 + j)] = src.at(i, j);
    }
  }
}

}  // namespace

InflationSquare::InflationSquare(CorrMatrix r, CorrMatrix s)
    : r_(std::move(r)), s_(std::move(s)) {
  if (r_.rows() != s_.cols() || r_.cols() != s_.rows()) {
    throw DimensionMismatch("bipartite inflation: R is " +
                            std::to_string(r_.rows()) + "x" +
                            std::to_string(r_.cols()) + " but S is " +
                            std::to_string(s_.rows()) + "x" +
                            std::to_string(s_.cols()));
  }
  if (r_.row_label() != s_.col_label() || r_.col_label() != s_.row_label()) {
    throw DimensionMismatch(
        "bipartite inflation: R and S labels are not dual");
  }
}

CorrMatrix InflationSquare::materialize() const {
  const std::size_t a = r_.rows(), b = r_.cols(), n = a + b;
  const std::string label = sum_label(r_.row_label(), r_.col_label());
  std::vector<Int> entries(n * n, 0);
  place_block(entries, n, r_, 0, a);
  place_block(entries, n, s_, a, 0);
  return CorrMatrix(n, n, std::move(entries), label, label);
}

InflationSquare bipartite_inflation(const CorrMatrix& r, const CorrMatrix& s) {
  return InflationSquare(r, s);
}

CorrMatrix inflation_power(const InflationSquare& x, std::size_t n) {
  const CorrMatrix& r = x.r_block();
  const CorrMatrix& s = x.s_block();
  const std::size_t a = r.rows(), b = r.cols(), size = a + b;
  const std::string label = sum_label(r.row_label(), r.col_label());
  const std::size_t k = n / 2;
  const CorrMatrix e_pow = power(tensor(r, s), k);  // (RS)^k
  const CorrMatrix f_pow = power(tensor(s, r), k);  // (SR)^k

  std::vector<Int> entries(size * size, 0);
  if (n % 2 == 0) {
    place_block(entries, size, e_pow, 0, 0);
    place_block(entries, size, f_pow, a, a);
  } else {
    place_block(entries, size, tensor(e_pow, r), 0, a);
    place_block(entries, size, tensor(f_pow, s), a, 0);
  }
  return CorrMatrix(size, size, std::move(entries), label, label);
}

}  // namespace sekit
