#include "sekit/invariants.hpp"

namespace sekit {

namespace {

void require_state_matrix(const CorrMatrix& m) {
  if (!m.is_square()) {
    throw NotSquare("invariants are defined for square matrices only");
  }
}

IntMatrix identity_minus_transposed(const CorrMatrix& a) {
  const std::size_t n = a.rows();
  IntMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out.at(i, j) = -a.at(j, i);
    }
    out.at(i, i) += 1;
  }
  return out;
}

}  // namespace

IntMatrix identity_minus(const CorrMatrix& a) {
  require_state_matrix(a);
  const std::size_t n = a.rows();
  IntMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out.at(i, j) = -a.at(i, j);
    }
    out.at(i, i) += 1;
  }
  return out;
}

AbelianGroup cokernel_group(const IntMatrix& m) {
  const SnfResult snf = smith_normal_form(m);
  AbelianGroup group;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const Int& d = snf.d.at(i, i);
    if (d == 0) {
      ++group.free_rank;
    } else if (d > 1) {
      group.torsion.push_back(d);
    }
  }
  return group;
}

AbelianGroup bowen_franks(const CorrMatrix& e) {
  require_state_matrix(e);
  return cokernel_group(identity_minus(e));
}

std::pair<AbelianGroup, std::size_t> k_theory(const CorrMatrix& e) {
  require_state_matrix(e);
  if (!classify(e).regular) {
    throw NotRegular(
        "K-theory is computed only for matrices with no zero row or column");
  }
  AbelianGroup k0 = cokernel_group(identity_minus_transposed(e));
  const std::size_t k1_rank = k0.free_rank;
  return {std::move(k0), k1_rank};
}

std::vector<Int> nonzero_char_poly(const CorrMatrix& e) {
  require_state_matrix(e);
  const std::size_t n = e.rows();
  IntMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = e.at(i, j);
  }
  std::vector<Int> coeffs = char_poly(m);
  std::size_t zeros = 0;
  while (zeros < coeffs.size() - 1 && coeffs[zeros] == 0) ++zeros;
  coeffs.erase(coeffs.begin(), coeffs.begin() + zeros);
  return coeffs;
}

InvariantReport dilation_invariants(const CorrMatrix& e) {
  require_state_matrix(e);
  InvariantReport report;
  report.flags = classify(e);
  report.bowen_franks = bowen_franks(e);
  report.det_i_minus_a = determinant(identity_minus(e));
  report.nonzero_char_poly = nonzero_char_poly(e);
  if (report.flags.regular) {
    auto [k0, k1_rank] = k_theory(e);
    report.k0 = std::move(k0);
    report.k1_rank = k1_rank;
  }
  return report;
}

DilationComparison compare_dilations(const CorrMatrix& e,
                                     const CorrMatrix& f) {
  const InvariantReport re = dilation_invariants(e);
  const InvariantReport rf = dilation_invariants(f);
  if (re.bowen_franks != rf.bowen_franks) {
    return {false, "bowen_franks"};
  }
  if (re.nonzero_char_poly != rf.nonzero_char_poly) {
    return {false, "nonzero_char_poly"};
  }
  if (re.flags.regular && rf.flags.regular) {
    if (*re.k0 != *rf.k0) return {false, "k0"};
    if (*re.k1_rank != *rf.k1_rank) return {false, "k1_rank"};
  }
  return {true, ""};
}

}  // namespace sekit
