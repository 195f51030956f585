#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sekit/matrix.hpp"

namespace sekit {

/// Outcome of a witness verification. A rejection names the first failing
/// equation and the first differing coordinate within it; chain rejections
/// also carry the failing link index.
struct Verdict {
  bool accepted = false;
  std::string equation;                // e.g. "R*S == E"
  std::size_t row = 0;
  std::size_t col = 0;
  std::optional<std::size_t> link;     // failing link, for chains
  std::string detail;                  // human-readable mismatch

  static Verdict accept() {
    Verdict v;
    v.accepted = true;
    return v;
  }

  static Verdict reject(std::string equation, std::size_t row,
                        std::size_t col, std::string detail) {
    Verdict v;
    v.accepted = false;
    v.equation = std::move(equation);
    v.row = row;
    v.col = col;
    v.detail = std::move(detail);
    return v;
  }

  explicit operator bool() const { return accepted; }
};

/// Witness for elementary strong shift equivalence: E = R*S and F = S*R.
struct EsseWitness {
  CorrMatrix r;  // a x b
  CorrMatrix s;  // b x a
};

/// Witness for shift equivalence with lag m:
/// E^m = R*S, F^m = S*R, S*E = F*S, E*R = R*F.
struct SeWitness {
  CorrMatrix r;
  CorrMatrix s;
  std::size_t lag;

  SeWitness(CorrMatrix r_in, CorrMatrix s_in, std::size_t lag_in)
      : r(std::move(r_in)), s(std::move(s_in)), lag(lag_in) {
    if (lag == 0) throw InvalidWitness("shift-equivalence lag must be >= 1");
  }
};

/// Witness for matrix-level strong Morita equivalence: a permutation matrix
/// P with E*P = P*F (conjugacy by a vertex bijection).
struct SmeWitness {
  CorrMatrix p;
};

/// A chain of elementary links T_0 ~ T_1 ~ ... ~ T_n witnessing strong shift
/// equivalence; links[i] must be valid for (T_i, T_{i+1}).
struct SseChain {
  std::vector<CorrMatrix> intermediates;
  std::vector<EsseWitness> links;

  SseChain(std::vector<CorrMatrix> intermediates_in,
           std::vector<EsseWitness> links_in)
      : intermediates(std::move(intermediates_in)),
        links(std::move(links_in)) {
    if (links.empty()) throw InvalidWitness("chain needs at least one link");
    if (intermediates.size() != links.size() + 1) {
      throw InvalidWitness("chain needs exactly one more matrix than links");
    }
  }

  std::size_t length() const { return links.size(); }
};

}  // namespace sekit
