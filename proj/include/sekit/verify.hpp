#pragma once

#include "sekit/witness.hpp"

namespace sekit {

/// Accepts iff R*S == E and S*R == F exactly.
Verdict verify_esse(const CorrMatrix& e, const CorrMatrix& f,
                    const EsseWitness& w);

/// Accepts iff every link verifies against its adjacent intermediates.
Verdict verify_sse_chain(const SseChain& chain);

/// Accepts iff all four lag-m equations hold exactly:
/// E^m == R*S, F^m == S*R, S*E == F*S, E*R == R*F.
Verdict verify_se(const CorrMatrix& e, const CorrMatrix& f,
                  const SeWitness& w);

/// Accepts iff P is a permutation matrix and E*P == P*F.
Verdict verify_sme(const CorrMatrix& e, const CorrMatrix& f,
                   const SmeWitness& w);

}  // namespace sekit
