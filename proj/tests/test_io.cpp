#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "sekit/io.hpp"
#include "sekit/search.hpp"
#include "testutil.hpp"

using namespace sekit;
using testutil::Rng;

namespace {

CorrMatrix mat(const std::vector<std::vector<long>>& rows,
               const std::string& rl = "", const std::string& cl = "") {
  return CorrMatrix::from_rows(rows, rl, cl);
}

std::string golden_file(const std::string& name) {
  const std::string path = std::string(SEKIT_TEST_DATA_DIR) + "/" + name;
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing golden file ", path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

CertificateFile sample_esse_cert() {
  return make_certificate(mat({{1, 1}, {1, 1}}, "A", "A"),
                          mat({{2}}, "B", "B"),
                          EsseWitness{mat({{1}, {1}}, "A", "B"),
                                      mat({{1, 1}}, "B", "A")});
}

}  // namespace

TEST_CASE("parse_matrix basics") {
  CHECK(parse_matrix("1 1\n2\n") == mat({{2}}));
  CHECK(parse_matrix("2 2\n1 1\n1 0\n") == mat({{1, 1}, {1, 0}}));
  CHECK(parse_matrix("# comment\n\n2 2 # dims\n1 1\n1 0\n") ==
        mat({{1, 1}, {1, 0}}));
  CHECK(parse_matrix("label A B\n1 2\n5 7\n") == mat({{5, 7}}, "A", "B"));
  CHECK(parse_matrix("label - B\n1 1\n0\n") == mat({{0}}, "", "B"));
}

TEST_CASE("parse_matrix failures") {
  CHECK_THROWS_AS(parse_matrix("2 2\n1 -1\n0 0\n"), NegativeEntry);
  CHECK_THROWS_AS(parse_matrix("2 2\n1 x\n0 0\n"), ParseError);
  CHECK_THROWS_AS(parse_matrix("2 2\n1 1\n"), ParseError);       // truncated
  CHECK_THROWS_AS(parse_matrix("2 2\n1 1 1\n1 1\n"), ShapeMismatch);
  CHECK_THROWS_AS(parse_matrix("0 2\n"), ShapeMismatch);
  CHECK_THROWS_AS(parse_matrix("1 1\n1\n1 1\n2\n"), ParseError);  // trailing
  CHECK_THROWS_AS(parse_matrix("label A\n1 1\n1\n"), ParseError);
  CHECK_THROWS_AS(parse_matrix(""), ParseError);

  try {
    parse_matrix("2 2\n1 1\nboom 0\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 1);
  }
}

TEST_CASE("matrix round trips are canonical") {
  Rng rng(501);
  for (int it = 0; it < 200; ++it) {
    const std::size_t rows = testutil::pick(rng, 1, 5);
    const std::size_t cols = testutil::pick(rng, 1, 5);
    const bool labeled = testutil::pick(rng, 0, 1) == 1;
    const CorrMatrix m = testutil::random_matrix(
        rng, rows, cols, 99, labeled ? "A" : "", labeled ? "B" : "");
    const std::string text = write_matrix(m);
    CHECK(parse_matrix(text) == m);
    CHECK(write_matrix(parse_matrix(text)) == text);
  }

  const Int big = Int(1) << 200;
  const CorrMatrix huge(1, 2, {big, big + 1}, "A", "B");
  CHECK(parse_matrix(write_matrix(huge)) == huge);
}

TEST_CASE("certificate round trips for every kind") {
  Rng rng(502);

  const CertificateFile esse = sample_esse_cert();
  CHECK(parse_certificate(write_certificate(esse)).kind == CertKind::esse);
  CHECK(write_certificate(parse_certificate(write_certificate(esse))) ==
        write_certificate(esse));

  const auto planted = testutil::plant_esse(rng, 3, 2);
  const CertificateFile se = make_certificate(
      planted.e, planted.f, SeWitness(planted.w.r, planted.w.s, 1));
  const CertificateFile se_back = parse_certificate(write_certificate(se));
  CHECK(se_back.kind == CertKind::se);
  CHECK(std::get<SeWitness>(se_back.witness).lag == 1);
  CHECK(se_back.left == planted.e);
  CHECK(verify_certificate(se_back).accepted);

  const auto sme = testutil::plant_sme(rng, 3, 2);
  const CertificateFile sme_cert =
      make_certificate(sme.e, sme.f, sme.w);
  const CertificateFile sme_back =
      parse_certificate(write_certificate(sme_cert));
  CHECK(verify_certificate(sme_back).accepted);
  CHECK(std::get<SmeWitness>(sme_back.witness).p == sme.w.p);

  const auto word = testutil::random_word(rng, 3, 3, 2);
  const CertificateFile chain_cert = make_certificate(word.chain(0, 3));
  const std::string text = write_certificate(chain_cert);
  const CertificateFile chain_back = parse_certificate(text);
  CHECK(chain_back.kind == CertKind::sse_chain);
  CHECK(std::get<SseChain>(chain_back.witness).length() == 3);
  CHECK(verify_certificate(chain_back).accepted);
  CHECK(write_certificate(chain_back) == text);
}

TEST_CASE("cached verdicts survive the round trip but stay advisory") {
  CertificateFile cert = sample_esse_cert();
  cert.verdict = CachedVerdict{true, "sekit 0.1.0"};
  const std::string text = write_certificate(cert);
  CHECK(text.find("verdict: accepted\n") != std::string::npos);
  CHECK(text.find("toolkit: sekit 0.1.0\n") != std::string::npos);

  const CertificateFile back = parse_certificate(text);
  REQUIRE(back.verdict.has_value());
  CHECK(back.verdict->accepted);
  CHECK(back.verdict->toolkit == "sekit 0.1.0");
  CHECK(write_certificate(back) == text);

  // a cached "accepted" on a corrupted payload does not make it verify
  CertificateFile lying = make_certificate(
      mat({{2}}, "A", "A"), mat({{3}}, "B", "B"),
      EsseWitness{mat({{1}}, "A", "B"), mat({{2}}, "B", "A")});
  lying.verdict = CachedVerdict{true, "sekit 0.1.0"};
  const CertificateFile reparsed = parse_certificate(write_certificate(lying));
  CHECK_FALSE(verify_certificate(reparsed).accepted);
}

TEST_CASE("schema violations") {
  const std::string text = write_certificate(sample_esse_cert());

  // future schema version
  std::string future = text;
  future.replace(future.find("schema_version: 1"), 17, "schema_version: 2");
  CHECK_THROWS_AS(parse_certificate(future), SchemaVersionUnsupported);

  // kind/payload mismatch: esse payload under kind se (lag is missing)
  std::string wrong_kind = text;
  wrong_kind.replace(wrong_kind.find("kind: esse"), 10, "kind: se");
  CHECK_THROWS_AS(parse_certificate(wrong_kind), KindMismatch);

  // a lag field under kind esse belongs to another kind
  std::string extra_lag = text;
  extra_lag.insert(extra_lag.find("matrix left"), "lag: 2\n");
  CHECK_THROWS_AS(parse_certificate(extra_lag), KindMismatch);

  // unknown fields are rejected outright
  std::string unknown = text;
  unknown.insert(unknown.find("matrix left"), "flavor: mild\n");
  CHECK_THROWS_AS(parse_certificate(unknown), ParseError);

  std::string trailing = text + "flavor: mild\n";
  CHECK_THROWS_AS(parse_certificate(trailing), ParseError);

  std::string dup = text + "matrix left\n1 1\n2\nend\n";
  CHECK_THROWS_AS(parse_certificate(dup), KindMismatch);

  CHECK_THROWS_AS(parse_certificate("kind: esse\n"), ParseError);
  CHECK_THROWS_AS(parse_certificate("schema_version: x\n"),
                  SchemaVersionUnsupported);
  CHECK_THROWS_AS(parse_certificate(""), ParseError);
}

TEST_CASE("renderings") {
  CHECK(render_group(AbelianGroup{}) == "0");
  CHECK(render_group(AbelianGroup{{Int(2)}, 0}) == "Z/2");
  CHECK(render_group(AbelianGroup{{}, 2}) == "Z^2");
  CHECK(render_group(AbelianGroup{{}, 1}) == "Z");
  CHECK(render_group(AbelianGroup{{Int(2), Int(4)}, 1}) == "Z/2 + Z/4 + Z");

  CHECK(render_poly({Int(-2), Int(1)}) == "t - 2");
  CHECK(render_poly({Int(-1), Int(-1), Int(1)}) == "t^2 - t - 1");
  CHECK(render_poly({Int(1)}) == "1");
  CHECK(render_poly({Int(1), Int(-2), Int(1)}) == "t^2 - 2t + 1");
  CHECK(render_poly({Int(0), Int(3), Int(1)}) == "t^2 + 3t");
}

TEST_CASE("report golden files") {
  CHECK(render_report(dilation_invariants(mat({{2}}))) ==
        golden_file("report_two.txt"));
  CHECK(render_report(dilation_invariants(mat({{1, 1}, {1, 0}}))) ==
        golden_file("report_golden_mean.txt"));
  CHECK(render_report(dilation_invariants(CorrMatrix::identity(2))) ==
        golden_file("report_identity2.txt"));
}

TEST_CASE("chain certificates reject tampered endpoints") {
  Rng rng(503);
  const auto word = testutil::random_word(rng, 3, 2, 2);
  CertificateFile cert = make_certificate(word.chain(0, 2));
  cert.left = mat({{9}}, cert.left.row_label(), cert.left.col_label());
  CHECK_THROWS_AS(verify_certificate(cert), KindMismatch);
}
