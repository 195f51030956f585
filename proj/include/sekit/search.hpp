#pragma once

#include <optional>

#include "sekit/witness.hpp"

namespace sekit {

/// Bounds for the brute-force searchers. The budget caps the raw number of
/// candidate matrices a search is allowed to range over; exceeding it raises
/// BoundsTooLarge instead of silently truncating the enumeration.
struct SearchBounds {
  std::size_t max_inner_dim = 4;
  unsigned long max_entry = 3;
  std::size_t max_lag = 6;
  unsigned long long budget = 100000000ULL;
};

/// Exhaustive search for an elementary strong shift equivalence witness
/// (R, S) with entries <= max_entry. The bridge dimension is forced by the
/// shapes (R is a x b with b the size of F); when it exceeds max_inner_dim no
/// witness can lie within bounds and the search reports NotFound.
///
/// Witnesses are visited in lexicographic order over the row-major entries of
/// (R, S), so the returned witness is the least accepted candidate and the
/// result is reproducible run to run.
std::optional<EsseWitness> search_esse(const CorrMatrix& e, const CorrMatrix& f,
                                       const SearchBounds& bounds = {});

/// As search_esse, additionally ranging over lags 1..max_lag (ascending, so
/// the returned witness has the least feasible lag).
std::optional<SeWitness> search_se(const CorrMatrix& e, const CorrMatrix& f,
                                   const SearchBounds& bounds = {});

/// Tries all n! vertex bijections in lexicographic order. Sizes above 8 raise
/// BoundsTooLarge; unequal sizes can never be conjugate and report NotFound.
std::optional<SmeWitness> search_sme(const CorrMatrix& e, const CorrMatrix& f,
                                     const SearchBounds& bounds = {});

}  // namespace sekit
