#include "sekit/io.hpp"

#include <cctype>
#include <regex>
#include <sstream>
#include <utility>

#include "sekit/verify.hpp"

namespace sekit {

namespace {

constexpr std::size_t kMaxCells = std::size_t(1) << 24;

struct Line {
  std::size_t no = 0;
  std::string text;  // comment-stripped, untrimmed
};

bool is_blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

class LineReader {
 public:
  explicit LineReader(const std::string& text) {
    std::size_t no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t eol = text.find('\n', pos);
      if (eol == std::string::npos) eol = text.size();
      std::string line = text.substr(pos, eol - pos);
      ++no;
      if (auto hash = line.find('#'); hash != std::string::npos) {
        line.resize(hash);
      }
      if (!is_blank(line)) lines_.push_back({no, std::move(line)});
      pos = eol + 1;
    }
    last_no_ = no;
  }

  const Line* peek() const {
    return idx_ < lines_.size() ? &lines_[idx_] : nullptr;
  }

  Line next(const std::string& expectation) {
    if (idx_ >= lines_.size()) {
      throw ParseError(last_no_ + 1, 1,
                       "unexpected end of input, expected " + expectation);
    }
    return lines_[idx_++];
  }

  bool at_end() const { return idx_ >= lines_.size(); }

 private:
  std::vector<Line> lines_;
  std::size_t idx_ = 0;
  std::size_t last_no_ = 0;
};

struct Token {
  std::string text;
  std::size_t col = 0;  // 1-based
};

std::vector<Token> tokenize(const Line& line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.text.size()) {
    if (std::isspace(static_cast<unsigned char>(line.text[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.text.size() &&
           !std::isspace(static_cast<unsigned char>(line.text[i]))) {
      ++i;
    }
    tokens.push_back({line.text.substr(start, i - start), start + 1});
  }
  return tokens;
}

bool is_integer_token(const std::string& s) {
  std::size_t start = (s.size() > 1 && s[0] == '-') ? 1 : 0;
  if (start >= s.size()) return false;
  return std::all_of(s.begin() + start, s.end(),
                     [](unsigned char c) { return std::isdigit(c); });
}

Int parse_entry(const Token& token, std::size_t line_no) {
  if (!is_integer_token(token.text)) {
    throw ParseError(line_no, token.col,
                     "expected an integer, got '" + token.text + "'");
  }
  Int value(token.text);
  if (value < 0) {
    throw NegativeEntry("line " + std::to_string(line_no) +
                        ": negative entry " + token.text);
  }
  return value;
}

std::size_t parse_count(const Token& token, std::size_t line_no,
                        const char* what) {
  if (!is_integer_token(token.text) || token.text[0] == '-') {
    throw ParseError(line_no, token.col,
                     std::string("expected a count for ") + what);
  }
  try {
    return std::stoull(token.text);
  } catch (const std::exception&) {
    throw ParseError(line_no, token.col, std::string(what) + " out of range");
  }
}

std::string decode_label(const std::string& token) {
  return token == "-" ? "" : token;
}

std::string encode_label(const std::string& label) {
  return label.empty() ? "-" : label;
}

CorrMatrix read_matrix_body(LineReader& reader) {
  Line line = reader.next("a matrix");
  std::vector<Token> tokens = tokenize(line);
  std::string row_label, col_label;
  if (tokens[0].text == "label") {
    if (tokens.size() != 3) {
      throw ParseError(line.no, tokens[0].col,
                       "label line needs exactly two label tokens");
    }
    row_label = decode_label(tokens[1].text);
    col_label = decode_label(tokens[2].text);
    line = reader.next("matrix dimensions");
    tokens = tokenize(line);
  }
  if (tokens.size() != 2) {
    throw ParseError(line.no, tokens[0].col,
                     "expected 'rows cols' dimension line");
  }
  const std::size_t rows = parse_count(tokens[0], line.no, "rows");
  const std::size_t cols = parse_count(tokens[1], line.no, "cols");
  if (rows == 0 || cols == 0) {
    throw ShapeMismatch("line " + std::to_string(line.no) +
                        ": matrix dimensions must be positive");
  }
  if (rows > kMaxCells / cols) {
    throw ShapeMismatch("line " + std::to_string(line.no) +
                        ": matrix dimensions too large");
  }
  std::vector<Int> entries;
  entries.reserve(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    Line row_line = reader.next("matrix row " + std::to_string(i));
    std::vector<Token> row_tokens = tokenize(row_line);
    if (row_tokens.size() != cols) {
      throw ShapeMismatch("line " + std::to_string(row_line.no) + ": expected " +
                          std::to_string(cols) + " entries, got " +
                          std::to_string(row_tokens.size()));
    }
    for (const Token& t : row_tokens) {
      entries.push_back(parse_entry(t, row_line.no));
    }
  }
  return CorrMatrix(rows, cols, std::move(entries), std::move(row_label),
                    std::move(col_label));
}

void append_matrix(std::string& out, const CorrMatrix& m) {
  if (!m.row_label().empty() || !m.col_label().empty()) {
    out += "label " + encode_label(m.row_label()) + " " +
           encode_label(m.col_label()) + "\n";
  }
  out += std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ' ';
      out += m.at(i, j).get_str();
    }
    out += '\n';
  }
}

const std::regex kMatrixNamePattern(
    R"(^(left|right|intermediate\.[0-9]+|witness\.(r|s|p)|witness\.[0-9]+\.(r|s))$)");

/// True for any line that belongs to the certificate grammar of some kind;
/// such lines in the wrong place signal a kind/payload mismatch rather than
/// an unknown field.
bool is_schema_line(const std::vector<Token>& tokens) {
  if (tokens.empty()) return false;
  const std::string& head = tokens[0].text;
  if (head == "lag:" || head == "links:" || head == "verdict:" ||
      head == "toolkit:" || head == "schema_version:" || head == "kind:" ||
      head == "end") {
    return true;
  }
  return head == "matrix" && tokens.size() == 2 &&
         std::regex_match(tokens[1].text, kMatrixNamePattern);
}

[[noreturn]] void fail_unexpected(CertKind kind, const Line& line,
                                  const std::string& expected) {
  std::vector<Token> tokens = tokenize(line);
  if (is_schema_line(tokens)) {
    throw KindMismatch("line " + std::to_string(line.no) + ": expected " +
                       expected + ", found '" + tokens[0].text +
                       (tokens.size() > 1 ? " " + tokens[1].text : "") +
                       "': payload does not match kind '" +
                       kind_name(kind) + "'");
  }
  throw ParseError(line.no, tokens.empty() ? 1 : tokens[0].col,
                   "unknown field, expected " + expected);
}

/// Reads a "key: value..." line; returns the raw value tokens.
std::vector<Token> expect_field(LineReader& reader, CertKind kind,
                                const std::string& key, Line* where = nullptr) {
  Line line = reader.next("field '" + key + ":'");
  std::vector<Token> tokens = tokenize(line);
  if (tokens.empty() || tokens[0].text != key + ":") {
    fail_unexpected(kind, line, "field '" + key + ":'");
  }
  if (where) *where = line;
  tokens.erase(tokens.begin());
  return tokens;
}

CorrMatrix expect_matrix(LineReader& reader, CertKind kind,
                         const std::string& name) {
  Line line = reader.next("matrix section '" + name + "'");
  std::vector<Token> tokens = tokenize(line);
  if (tokens.size() != 2 || tokens[0].text != "matrix" ||
      tokens[1].text != name) {
    fail_unexpected(kind, line, "matrix section '" + name + "'");
  }
  CorrMatrix m = read_matrix_body(reader);
  Line end_line = reader.next("'end'");
  std::vector<Token> end_tokens = tokenize(end_line);
  if (end_tokens.size() != 1 || end_tokens[0].text != "end") {
    throw ParseError(end_line.no, end_tokens.empty() ? 1 : end_tokens[0].col,
                     "expected 'end' closing matrix '" + name + "'");
  }
  return m;
}

std::size_t expect_count_field(LineReader& reader, CertKind kind,
                               const std::string& key, std::size_t min_value,
                               std::size_t max_value) {
  Line where;
  std::vector<Token> value = expect_field(reader, kind, key, &where);
  if (value.size() != 1) {
    throw ParseError(where.no, 1, "field '" + key + "' needs one value");
  }
  const std::size_t n = parse_count(value[0], where.no, key.c_str());
  if (n < min_value || n > max_value) {
    throw ParseError(where.no, value[0].col,
                     "field '" + key + "' out of range");
  }
  return n;
}

void check_kind_payload(const CertificateFile& cert) {
  const bool ok =
      (cert.kind == CertKind::esse &&
       std::holds_alternative<EsseWitness>(cert.witness)) ||
      (cert.kind == CertKind::sse_chain &&
       std::holds_alternative<SseChain>(cert.witness)) ||
      (cert.kind == CertKind::se &&
       std::holds_alternative<SeWitness>(cert.witness)) ||
      (cert.kind == CertKind::sme &&
       std::holds_alternative<SmeWitness>(cert.witness));
  if (!ok) {
    throw KindMismatch(std::string("certificate kind '") +
                       kind_name(cert.kind) +
                       "' does not match its witness payload");
  }
}

}  // namespace

const char* kind_name(CertKind kind) {
  switch (kind) {
    case CertKind::esse: return "esse";
    case CertKind::sse_chain: return "sse-chain";
    case CertKind::se: return "se";
    case CertKind::sme: return "sme";
  }
  return "?";
}

std::optional<CertKind> kind_from_name(const std::string& name) {
  if (name == "esse") return CertKind::esse;
  if (name == "sse-chain") return CertKind::sse_chain;
  if (name == "se") return CertKind::se;
  if (name == "sme") return CertKind::sme;
  return std::nullopt;
}

CorrMatrix parse_matrix(const std::string& text) {
  LineReader reader(text);
  CorrMatrix m = read_matrix_body(reader);
  if (const Line* extra = reader.peek()) {
    throw ParseError(extra->no, 1, "unexpected trailing content");
  }
  return m;
}

std::string write_matrix(const CorrMatrix& m) {
  std::string out;
  append_matrix(out, m);
  return out;
}

CertificateFile make_certificate(CorrMatrix left, CorrMatrix right,
                                 EsseWitness witness) {
  return CertificateFile{CertKind::esse, std::move(left), std::move(right),
                         std::move(witness), std::nullopt};
}

CertificateFile make_certificate(CorrMatrix left, CorrMatrix right,
                                 SeWitness witness) {
  return CertificateFile{CertKind::se, std::move(left), std::move(right),
                         std::move(witness), std::nullopt};
}

CertificateFile make_certificate(CorrMatrix left, CorrMatrix right,
                                 SmeWitness witness) {
  return CertificateFile{CertKind::sme, std::move(left), std::move(right),
                         std::move(witness), std::nullopt};
}

CertificateFile make_certificate(SseChain chain) {
  CorrMatrix left = chain.intermediates.front();
  CorrMatrix right = chain.intermediates.back();
  return CertificateFile{CertKind::sse_chain, std::move(left),
                         std::move(right), std::move(chain), std::nullopt};
}

CertificateFile parse_certificate(const std::string& text) {
  LineReader reader(text);

  {
    Line line = reader.next("field 'schema_version:'");
    std::vector<Token> tokens = tokenize(line);
    if (tokens.empty() || tokens[0].text != "schema_version:") {
      throw ParseError(line.no, tokens.empty() ? 1 : tokens[0].col,
                       "certificate must start with 'schema_version:'");
    }
    if (tokens.size() != 2) {
      throw ParseError(line.no, tokens[0].col,
                       "schema_version needs one value");
    }
    if (tokens[1].text != "1") {
      throw SchemaVersionUnsupported("schema_version " + tokens[1].text +
                                     " unsupported; this build reads 1");
    }
  }

  CertKind kind;
  {
    Line line = reader.next("field 'kind:'");
    std::vector<Token> tokens = tokenize(line);
    if (tokens.size() != 2 || tokens[0].text != "kind:") {
      throw ParseError(line.no, tokens.empty() ? 1 : tokens[0].col,
                       "expected 'kind:' after schema_version");
    }
    auto parsed = kind_from_name(tokens[1].text);
    if (!parsed) {
      throw ParseError(line.no, tokens[1].col,
                       "unknown kind '" + tokens[1].text + "'");
    }
    kind = *parsed;
  }

  std::optional<CertificateFile> cert;
  switch (kind) {
    case CertKind::esse: {
      CorrMatrix left = expect_matrix(reader, kind, "left");
      CorrMatrix right = expect_matrix(reader, kind, "right");
      CorrMatrix r = expect_matrix(reader, kind, "witness.r");
      CorrMatrix s = expect_matrix(reader, kind, "witness.s");
      cert = make_certificate(std::move(left), std::move(right),
                              EsseWitness{std::move(r), std::move(s)});
      break;
    }
    case CertKind::se: {
      const std::size_t lag =
          expect_count_field(reader, kind, "lag", 1, 1000000);
      CorrMatrix left = expect_matrix(reader, kind, "left");
      CorrMatrix right = expect_matrix(reader, kind, "right");
      CorrMatrix r = expect_matrix(reader, kind, "witness.r");
      CorrMatrix s = expect_matrix(reader, kind, "witness.s");
      cert = make_certificate(std::move(left), std::move(right),
                              SeWitness(std::move(r), std::move(s), lag));
      break;
    }
    case CertKind::sme: {
      CorrMatrix left = expect_matrix(reader, kind, "left");
      CorrMatrix right = expect_matrix(reader, kind, "right");
      CorrMatrix p = expect_matrix(reader, kind, "witness.p");
      cert = make_certificate(std::move(left), std::move(right),
                              SmeWitness{std::move(p)});
      break;
    }
    case CertKind::sse_chain: {
      const std::size_t links =
          expect_count_field(reader, kind, "links", 1, 100000);
      CorrMatrix left = expect_matrix(reader, kind, "left");
      CorrMatrix right = expect_matrix(reader, kind, "right");
      std::vector<CorrMatrix> intermediates;
      intermediates.push_back(left);
      for (std::size_t k = 1; k < links; ++k) {
        intermediates.push_back(
            expect_matrix(reader, kind, "intermediate." + std::to_string(k)));
      }
      intermediates.push_back(right);
      std::vector<EsseWitness> link_witnesses;
      for (std::size_t k = 0; k < links; ++k) {
        CorrMatrix r = expect_matrix(
            reader, kind, "witness." + std::to_string(k) + ".r");
        CorrMatrix s = expect_matrix(
            reader, kind, "witness." + std::to_string(k) + ".s");
        link_witnesses.push_back(EsseWitness{std::move(r), std::move(s)});
      }
      cert = make_certificate(
          SseChain(std::move(intermediates), std::move(link_witnesses)));
      break;
    }
  }

  if (const Line* line = reader.peek()) {
    std::vector<Token> tokens = tokenize(*line);
    if (!tokens.empty() && tokens[0].text == "verdict:") {
      reader.next("verdict");
      if (tokens.size() != 2 ||
          (tokens[1].text != "accepted" && tokens[1].text != "rejected")) {
        throw ParseError(line->no, tokens[0].col,
                         "verdict must be 'accepted' or 'rejected'");
      }
      CachedVerdict cached;
      cached.accepted = tokens[1].text == "accepted";
      if (const Line* tk = reader.peek()) {
        std::vector<Token> tk_tokens = tokenize(*tk);
        if (!tk_tokens.empty() && tk_tokens[0].text == "toolkit:") {
          reader.next("toolkit");
          std::string value;
          for (std::size_t i = 1; i < tk_tokens.size(); ++i) {
            if (i > 1) value += ' ';
            value += tk_tokens[i].text;
          }
          cached.toolkit = value;
        }
      }
      cert->verdict = cached;
    }
  }
  if (const Line* extra = reader.peek()) {
    fail_unexpected(kind, *extra, "end of certificate");
  }
  return std::move(*cert);
}

std::string write_certificate(const CertificateFile& cert) {
  check_kind_payload(cert);
  std::string out = "schema_version: 1\n";
  out += std::string("kind: ") + kind_name(cert.kind) + "\n";

  auto section = [&out](const std::string& name, const CorrMatrix& m) {
    out += "matrix " + name + "\n";
    append_matrix(out, m);
    out += "end\n";
  };

  switch (cert.kind) {
    case CertKind::esse: {
      const auto& w = std::get<EsseWitness>(cert.witness);
      section("left", cert.left);
      section("right", cert.right);
      section("witness.r", w.r);
      section("witness.s", w.s);
      break;
    }
    case CertKind::se: {
      const auto& w = std::get<SeWitness>(cert.witness);
      out += "lag: " + std::to_string(w.lag) + "\n";
      section("left", cert.left);
      section("right", cert.right);
      section("witness.r", w.r);
      section("witness.s", w.s);
      break;
    }
    case CertKind::sme: {
      const auto& w = std::get<SmeWitness>(cert.witness);
      section("left", cert.left);
      section("right", cert.right);
      section("witness.p", w.p);
      break;
    }
    case CertKind::sse_chain: {
      const auto& chain = std::get<SseChain>(cert.witness);
      out += "links: " + std::to_string(chain.length()) + "\n";
      section("left", cert.left);
      section("right", cert.right);
      for (std::size_t k = 1; k < chain.length(); ++k) {
        section("intermediate." + std::to_string(k), chain.intermediates[k]);
      }
      for (std::size_t k = 0; k < chain.length(); ++k) {
        section("witness." + std::to_string(k) + ".r", chain.links[k].r);
        section("witness." + std::to_string(k) + ".s", chain.links[k].s);
      }
      break;
    }
  }

  if (cert.verdict) {
    out += std::string("verdict: ") +
           (cert.verdict->accepted ? "accepted" : "rejected") + "\n";
    if (!cert.verdict->toolkit.empty()) {
      out += "toolkit: " + cert.verdict->toolkit + "\n";
    }
  }
  return out;
}

Verdict verify_certificate(const CertificateFile& cert) {
  check_kind_payload(cert);
  switch (cert.kind) {
    case CertKind::esse:
      return verify_esse(cert.left, cert.right,
                         std::get<EsseWitness>(cert.witness));
    case CertKind::se:
      return verify_se(cert.left, cert.right,
                       std::get<SeWitness>(cert.witness));
    case CertKind::sme:
      return verify_sme(cert.left, cert.right,
                        std::get<SmeWitness>(cert.witness));
    case CertKind::sse_chain: {
      const auto& chain = std::get<SseChain>(cert.witness);
      if (chain.intermediates.front() != cert.left ||
          chain.intermediates.back() != cert.right) {
        throw KindMismatch(
            "chain endpoints disagree with the certificate matrices");
      }
      return verify_sse_chain(chain);
    }
  }
  throw std::logic_error("unreachable");
}

std::string render_group(const AbelianGroup& g) {
  if (g.is_trivial()) return "0";
  std::string out;
  for (const Int& d : g.torsion) {
    if (!out.empty()) out += " + ";
    out += "Z/" + d.get_str();
  }
  if (g.free_rank == 1) {
    if (!out.empty()) out += " + ";
    out += "Z";
  } else if (g.free_rank > 1) {
    if (!out.empty()) out += " + ";
    out += "Z^" + std::to_string(g.free_rank);
  }
  return out;
}

std::string render_poly(const std::vector<Int>& ascending_coeffs) {
  const std::size_t degree = ascending_coeffs.size() - 1;
  if (degree == 0) return ascending_coeffs[0].get_str();
  std::string out;
  for (std::size_t k = degree + 1; k-- > 0;) {
    const Int& c = ascending_coeffs[k];
    if (c == 0) continue;
    const bool negative = c < 0;
    const Int mag = abs(c);
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (k == 0) {
      out += mag.get_str();
    } else {
      if (mag != 1) out += mag.get_str();
      out += "t";
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out.empty() ? "0" : out;
}

std::string render_report(const InvariantReport& report) {
  auto flag = [](bool b) { return b ? "true" : "false"; };
  std::string out;
  out += std::string("regular: ") + flag(report.flags.regular) + "\n";
  out += std::string("full: ") + flag(report.flags.full) + "\n";
  out += std::string("nondegenerate: ") + flag(report.flags.nondegenerate) +
         "\n";
  out += "bowen_franks: " + render_group(report.bowen_franks) + "\n";
  out += "det_i_minus_a: " + report.det_i_minus_a.get_str() + "\n";
  out += "nonzero_char_poly: " + render_poly(report.nonzero_char_poly) + "\n";
  out += "k0: " + (report.k0 ? render_group(*report.k0) : "absent") + "\n";
  out += "k1_rank: " +
         (report.k1_rank ? std::to_string(*report.k1_rank) : "absent") + "\n";
  return out;
}

}  // namespace sekit
