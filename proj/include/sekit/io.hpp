#pragma once

#include <optional>
#include <string>
#include <variant>

#include "sekit/invariants.hpp"
#include "sekit/witness.hpp"

namespace sekit {

// Matrix text format
// ------------------
//   label ROW_LABEL COL_LABEL   (optional; '-' stands for the empty label)
//   ROWS COLS
//   ROWS lines of COLS space-separated decimal integers
// '#' starts a comment anywhere; blank lines are ignored. Serialization is
// canonical: parse(write(m)) == m and write(parse(write(m))) == write(m)
// byte for byte.

CorrMatrix parse_matrix(const std::string& text);
std::string write_matrix(const CorrMatrix& m);

/// Which relation a certificate witnesses.
enum class CertKind { esse, sse_chain, se, sme };

const char* kind_name(CertKind kind);
std::optional<CertKind> kind_from_name(const std::string& name);

/// Advisory verdict cached inside a certificate. Loaders must re-verify;
/// the cached value is never trusted.
struct CachedVerdict {
  bool accepted = false;
  std::string toolkit;
};

/// A serialized equivalence claim: the two matrices, the witness, and an
/// optional cached verdict. The payload variant always matches `kind`.
struct CertificateFile {
  CertKind kind;
  CorrMatrix left;
  CorrMatrix right;
  std::variant<EsseWitness, SseChain, SeWitness, SmeWitness> witness;
  std::optional<CachedVerdict> verdict;
};

CertificateFile make_certificate(CorrMatrix left, CorrMatrix right,
                                 EsseWitness witness);
CertificateFile make_certificate(CorrMatrix left, CorrMatrix right,
                                 SeWitness witness);
CertificateFile make_certificate(CorrMatrix left, CorrMatrix right,
                                 SmeWitness witness);
CertificateFile make_certificate(SseChain chain);

// Certificate text format (strict: unknown fields are rejected, section
// order is fixed; the exact grammar is documented in the README):
//   schema_version: 1
//   kind: esse | sse-chain | se | sme
//   lag: M        (se only)    /    links: N   (sse-chain only)
//   matrix left ... end
//   matrix right ... end
//   kind-specific witness matrices
//   verdict: accepted|rejected   (optional, advisory)
//   toolkit: <text>              (optional, after verdict)
CertificateFile parse_certificate(const std::string& text);
std::string write_certificate(const CertificateFile& cert);

/// Re-runs the appropriate verifier on a certificate's own payload.
Verdict verify_certificate(const CertificateFile& cert);

// Deterministic renderings used by reports and the CLI.
std::string render_group(const AbelianGroup& g);
std::string render_poly(const std::vector<Int>& ascending_coeffs);
std::string render_report(const InvariantReport& report);

}  // namespace sekit
