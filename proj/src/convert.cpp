#include "sekit/convert.hpp"

namespace sekit {

namespace {

void require_accepted(const Verdict& v, const char* what) {
  if (!v) {
    throw InvalidWitness(std::string(what) + ": input witness rejected: " +
                         v.detail);
  }
}

/// Converters must never hand back something the verifier would refuse.
void assert_accepted(const Verdict& v, const char* what) {
  if (!v) {
    throw std::logic_error(std::string(what) +
                           " produced a rejected witness: " + v.detail);
  }
}

}  // namespace

EsseWitness sme_to_esse(const CorrMatrix& e, const CorrMatrix& f,
                        const SmeWitness& w) {
  require_accepted(verify_sme(e, f, w), "sme_to_esse");
  EsseWitness out{tensor(e, w.p), w.p.transposed()};
  assert_accepted(verify_esse(e, f, out), "sme_to_esse");
  return out;
}

std::optional<SmeWitness> esse_to_sme_if_invertible(const CorrMatrix& e,
                                                    const CorrMatrix& f,
                                                    const EsseWitness& w) {
  require_accepted(verify_esse(e, f, w), "esse_to_sme_if_invertible");
  std::optional<SmeWitness> out;
  if (is_permutation_matrix(w.r)) {
    out = SmeWitness{w.r};
  } else if (is_permutation_matrix(w.s)) {
    out = SmeWitness{w.s.transposed()};
  } else {
    return std::nullopt;
  }
  assert_accepted(verify_sme(e, f, *out), "esse_to_sme_if_invertible");
  return out;
}

SeWitness chain_to_se(const SseChain& chain) {
  require_accepted(verify_sse_chain(chain), "chain_to_se");
  CorrMatrix r = chain.links.front().r;
  CorrMatrix s = chain.links.front().s;
  for (std::size_t i = 1; i < chain.links.size(); ++i) {
    r = tensor(r, chain.links[i].r);
    s = tensor(chain.links[i].s, s);
  }
  SeWitness out(std::move(r), std::move(s), chain.length());
  assert_accepted(
      verify_se(chain.intermediates.front(), chain.intermediates.back(), out),
      "chain_to_se");
  return out;
}

SeWitness compose_se(const CorrMatrix& e, const CorrMatrix& f,
                     const CorrMatrix& g, const SeWitness& w1,
                     const SeWitness& w2) {
  require_accepted(verify_se(e, f, w1), "compose_se (first witness)");
  require_accepted(verify_se(f, g, w2), "compose_se (second witness)");
  const std::size_t m = w1.lag, n = w2.lag;
  const CorrMatrix& v = w2.r;
  const CorrMatrix& u = w2.s;
  // R' = R*V*(U*V)^(m-1): V appears m times, U appears m-1 times.
  CorrMatrix r = tensor(tensor(w1.r, v), power(tensor(u, v), m - 1));
  CorrMatrix s = tensor(u, w1.s);
  SeWitness out(std::move(r), std::move(s), m * n + m);
  assert_accepted(verify_se(e, g, out), "compose_se");
  return out;
}

SeWitness increase_lag(const CorrMatrix& e, const CorrMatrix& f,
                       const SeWitness& w, std::size_t k) {
  require_accepted(verify_se(e, f, w), "increase_lag");
  SeWitness out(w.r, tensor(w.s, power(e, k)), w.lag + k);
  assert_accepted(verify_se(e, f, out), "increase_lag");
  return out;
}

std::optional<EsseWitness> compose_esse_via_invertible(const CorrMatrix& e,
                                                       const CorrMatrix& f,
                                                       const CorrMatrix& g,
                                                       const EsseWitness& w1,
                                                       const EsseWitness& w2) {
  require_accepted(verify_esse(e, f, w1), "compose_esse (first witness)");
  require_accepted(verify_esse(f, g, w2), "compose_esse (second witness)");
  std::optional<EsseWitness> out;
  if (is_permutation_matrix(w2.s)) {
    const CorrMatrix& z = w2.s;
    out = EsseWitness{tensor(w1.r, z.transposed()), tensor(z, w1.s)};
  } else if (is_permutation_matrix(w1.r)) {
    const CorrMatrix& r = w1.r;
    out = EsseWitness{tensor(r, w2.r), tensor(w2.s, r.transposed())};
  } else {
    return std::nullopt;
  }
  assert_accepted(verify_esse(e, g, *out), "compose_esse_via_invertible");
  return out;
}

}  // namespace sekit
