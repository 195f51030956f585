#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sekit/matrix.hpp"
#include "sekit/snf.hpp"

namespace sekit {

/// Finitely generated abelian group in canonical form: invariant factors
/// greater than 1 (each dividing the next) plus a free rank. Isomorphism is
/// component-wise equality.
struct AbelianGroup {
  std::vector<Int> torsion;
  std::size_t free_rank = 0;

  bool is_trivial() const { return torsion.empty() && free_rank == 0; }
  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

/// Computable fingerprint of the dilation / Cuntz-Pimsner data of a square
/// matrix: Bowen-Franks group, det(I - A), the characteristic polynomial with
/// all factors of t stripped, and (for regular matrices) the K-theory of the
/// Cuntz-Krieger algebra. K-groups are absent when the matrix has a zero row
/// or column.
struct InvariantReport {
  StructureFlags flags;
  AbelianGroup bowen_franks;
  Int det_i_minus_a;
  std::vector<Int> nonzero_char_poly;  // ascending coefficients, monic
  std::optional<AbelianGroup> k0;
  std::optional<std::size_t> k1_rank;
};

/// Cokernel of Z^n --m--> Z^n, read off the Smith normal form.
AbelianGroup cokernel_group(const IntMatrix& m);

/// coker(I - E) over the integers.
AbelianGroup bowen_franks(const CorrMatrix& e);

/// K_0 = coker(I - E^T), K_1 rank = rational nullity of I - E^T. Requires a
/// regular matrix (no zero row, no zero column); throws NotRegular otherwise.
std::pair<AbelianGroup, std::size_t> k_theory(const CorrMatrix& e);

/// Characteristic polynomial det(tI - E) with every factor of t divided out;
/// ascending coefficients, monic, nonzero constant term. A matrix whose
/// spectrum is entirely zero yields the constant polynomial 1.
std::vector<Int> nonzero_char_poly(const CorrMatrix& e);

InvariantReport dilation_invariants(const CorrMatrix& e);

/// Result of comparing two fingerprints. Agreement is necessary for any of
/// the shift-equivalence relations to hold, never sufficient.
struct DilationComparison {
  bool consistent = false;
  std::string obstruction;  // first differing invariant, empty if consistent
};

/// Consistent iff the Bowen-Franks groups and the nonzero characteristic
/// polynomials agree, and - when both matrices are regular - the K-groups
/// agree as well.
DilationComparison compare_dilations(const CorrMatrix& e, const CorrMatrix& f);

/// I - A as a signed matrix (A square).
IntMatrix identity_minus(const CorrMatrix& a);

}  // namespace sekit
