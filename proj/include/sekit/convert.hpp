#pragma once

#include <optional>

#include "sekit/verify.hpp"

namespace sekit {

/// Downgrades a Morita witness P to the elementary witness (R, S) with
/// R = E*P and S = P^T. Throws InvalidWitness unless P verifies for (E, F).
EsseWitness sme_to_esse(const CorrMatrix& e, const CorrMatrix& f,
                        const SmeWitness& w);

/// Upgrades an elementary witness to a Morita witness when one of its two
/// blocks is a permutation matrix: P = R, or P = S^T. Returns nullopt when
/// neither block is invertible.
std::optional<SmeWitness> esse_to_sme_if_invertible(const CorrMatrix& e,
                                                    const CorrMatrix& f,
                                                    const EsseWitness& w);

/// Collapses a verified chain T_0 ~ ... ~ T_n to a shift equivalence of
/// lag n between its endpoints, via R = R_1*...*R_n and S = S_n*...*S_1.
SeWitness chain_to_se(const SseChain& chain);

/// Composes shift equivalences (E ~ F, lag m) and (F ~ G, lag n) into one of
/// lag m*n + m, via R' = R*V*(U*V)^(m-1) and S' = U*S.
SeWitness compose_se(const CorrMatrix& e, const CorrMatrix& f,
                     const CorrMatrix& g, const SeWitness& w1,
                     const SeWitness& w2);

/// Replaces S by S*E^k, turning a lag-m witness into a lag-(m+k) witness.
SeWitness increase_lag(const CorrMatrix& e, const CorrMatrix& f,
                       const SeWitness& w, std::size_t k);

/// Composes elementary witnesses (E ~ F) and (F ~ G) into one for (E, G),
/// possible when w2.s or w1.r is a permutation matrix:
///   Z = w2.s invertible:  R' = R*Z^T,    S' = Z*S;
///   R = w1.r invertible:  R' = R*w2.r,   S' = w2.s*R^T.
/// Returns nullopt when neither block is a permutation.
std::optional<EsseWitness> compose_esse_via_invertible(const CorrMatrix& e,
                                                       const CorrMatrix& f,
                                                       const CorrMatrix& g,
                                                       const EsseWitness& w1,
                                                       const EsseWitness& w2);

}  // namespace sekit
