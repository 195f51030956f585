#include "sekit/verify.hpp"

namespace sekit {

namespace {

void require_state_matrix(const CorrMatrix& m, const char* name) {
  if (!m.is_square()) {
    throw DimensionMismatch(std::string(name) +
                            " must be square over a single vertex set");
  }
}

/// Compares lhs and rhs entry-wise; on the first difference fills a
/// rejection for `equation` and returns it.
std::optional<Verdict> first_difference(const std::string& equation,
                                        const CorrMatrix& lhs,
                                        const CorrMatrix& rhs) {
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    for (std::size_t j = 0; j < lhs.cols(); ++j) {
      if (lhs.at(i, j) != rhs.at(i, j)) {
        return Verdict::reject(equation, i, j,
                               equation + " fails at (" + std::to_string(i) +
                                   "," + std::to_string(j) + "): " +
                                   lhs.at(i, j).get_str() + " != " +
                                   rhs.at(i, j).get_str());
      }
    }
  }
  return std::nullopt;
}

void require_bridge(const CorrMatrix& e, const CorrMatrix& f,
                    const CorrMatrix& r, const CorrMatrix& s) {
  if (r.rows() != e.rows() || r.cols() != f.rows() || s.rows() != f.rows() ||
      s.cols() != e.rows()) {
    throw DimensionMismatch("witness shapes do not bridge E and F");
  }
  if (r.row_label() != e.row_label() || r.col_label() != f.row_label() ||
      s.row_label() != f.row_label() || s.col_label() != e.row_label()) {
    throw DimensionMismatch("witness labels do not bridge E and F");
  }
}

}  // namespace

Verdict verify_esse(const CorrMatrix& e, const CorrMatrix& f,
                    const EsseWitness& w) {
  require_state_matrix(e, "E");
  require_state_matrix(f, "F");
  require_bridge(e, f, w.r, w.s);
  if (auto v = first_difference("R*S == E", tensor(w.r, w.s), e)) return *v;
  if (auto v = first_difference("S*R == F", tensor(w.s, w.r), f)) return *v;
  return Verdict::accept();
}

Verdict verify_sse_chain(const SseChain& chain) {
  for (std::size_t i = 0; i < chain.links.size(); ++i) {
    Verdict v = verify_esse(chain.intermediates[i], chain.intermediates[i + 1],
                            chain.links[i]);
    if (!v) {
      v.link = i;
      v.detail = "link " + std::to_string(i) + ": " + v.detail;
      return v;
    }
  }
  return Verdict::accept();
}

Verdict verify_se(const CorrMatrix& e, const CorrMatrix& f,
                  const SeWitness& w) {
  require_state_matrix(e, "E");
  require_state_matrix(f, "F");
  require_bridge(e, f, w.r, w.s);
  if (auto v = first_difference("E^m == R*S", power(e, w.lag),
                                tensor(w.r, w.s))) {
    return *v;
  }
  if (auto v = first_difference("F^m == S*R", power(f, w.lag),
                                tensor(w.s, w.r))) {
    return *v;
  }
  if (auto v = first_difference("S*E == F*S", tensor(w.s, e), tensor(f, w.s))) {
    return *v;
  }
  if (auto v = first_difference("E*R == R*F", tensor(e, w.r), tensor(w.r, f))) {
    return *v;
  }
  return Verdict::accept();
}

Verdict verify_sme(const CorrMatrix& e, const CorrMatrix& f,
                   const SmeWitness& w) {
  require_state_matrix(e, "E");
  require_state_matrix(f, "F");
  if (e.rows() != f.rows()) {
    throw DimensionMismatch("Morita witnesses need matrices of equal size");
  }
  if (w.p.rows() != e.rows() || w.p.cols() != f.rows() ||
      w.p.row_label() != e.row_label() || w.p.col_label() != f.row_label()) {
    throw DimensionMismatch("P does not bridge E and F");
  }
  if (!is_permutation_matrix(w.p)) {
    throw NotPermutation("P is not a permutation matrix");
  }
  if (auto v = first_difference("E*P == P*F", tensor(e, w.p),
                                tensor(w.p, f))) {
    return *v;
  }
  return Verdict::accept();
}

}  // namespace sekit
