#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "sekit/convert.hpp"
#include "sekit/io.hpp"
#include "sekit/search.hpp"
#include "sekit/version.hpp"

namespace {

// Exit codes: 0 accepted/consistent/found, 1 rejected/obstructed/not-found,
// 2 usage or I/O error, 3 enumeration budget exceeded.
constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw sekit::Error("cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw sekit::Error("cannot write file '" + path + "'");
  out << content;
  if (!out) throw sekit::Error("error writing file '" + path + "'");
}

sekit::CorrMatrix load_matrix(const std::string& path) {
  return sekit::parse_matrix(read_file(path));
}

sekit::CertificateFile load_certificate(const std::string& path) {
  return sekit::parse_certificate(read_file(path));
}

std::string toolkit_tag() {
  return std::string(sekit::kToolkitName) + " " + sekit::kVersion;
}

void attach_verdict(sekit::CertificateFile& cert) {
  cert.verdict = sekit::CachedVerdict{true, toolkit_tag()};
}

struct CheckOptions {
  std::string kind, cert_path, left_path, right_path;
};

int run_check(const CheckOptions& opt) {
  sekit::CertificateFile cert = load_certificate(opt.cert_path);
  if (sekit::kind_name(cert.kind) != opt.kind) {
    throw sekit::Error("certificate kind is '" +
                       std::string(sekit::kind_name(cert.kind)) +
                       "', requested '" + opt.kind + "'");
  }
  if (!opt.left_path.empty() && load_matrix(opt.left_path) != cert.left) {
    throw sekit::Error("left matrix file differs from the certificate");
  }
  if (!opt.right_path.empty() && load_matrix(opt.right_path) != cert.right) {
    throw sekit::Error("right matrix file differs from the certificate");
  }
  const sekit::Verdict verdict = sekit::verify_certificate(cert);
  if (verdict) {
    std::cout << "accepted\n";
    return kOk;
  }
  std::cout << "rejected: " << verdict.detail << "\n";
  return kNegative;
}

struct SearchOptions {
  std::string kind, left_path, right_path, out_path;
  sekit::SearchBounds bounds;
};

int run_search(const SearchOptions& opt) {
  const sekit::CorrMatrix left = load_matrix(opt.left_path);
  const sekit::CorrMatrix right = load_matrix(opt.right_path);
  std::optional<sekit::CertificateFile> cert;
  if (opt.kind == "esse") {
    if (auto w = sekit::search_esse(left, right, opt.bounds)) {
      cert = sekit::make_certificate(left, right, std::move(*w));
    }
  } else if (opt.kind == "se") {
    if (auto w = sekit::search_se(left, right, opt.bounds)) {
      cert = sekit::make_certificate(left, right, std::move(*w));
    }
  } else {
    if (auto w = sekit::search_sme(left, right, opt.bounds)) {
      cert = sekit::make_certificate(left, right, std::move(*w));
    }
  }
  if (!cert) {
    std::cerr << "no " << opt.kind << " witness found within bounds\n";
    return kNegative;
  }
  attach_verdict(*cert);
  write_output(opt.out_path, sekit::write_certificate(*cert));
  return kOk;
}

struct ConvertOptions {
  std::string from, to, cert_path, out_path;
};

int run_convert(const ConvertOptions& opt) {
  if (!((opt.from == "sme" && opt.to == "esse") ||
        (opt.from == "chain" && opt.to == "se"))) {
    throw sekit::Error("unsupported conversion " + opt.from + " -> " + opt.to);
  }
  sekit::CertificateFile cert = load_certificate(opt.cert_path);
  std::optional<sekit::CertificateFile> out;
  try {
    if (opt.from == "sme") {
      if (cert.kind != sekit::CertKind::sme) {
        throw sekit::Error("conversion from sme needs a kind 'sme' certificate");
      }
      auto w = sekit::sme_to_esse(cert.left, cert.right,
                                  std::get<sekit::SmeWitness>(cert.witness));
      out = sekit::make_certificate(cert.left, cert.right, std::move(w));
    } else {
      if (cert.kind != sekit::CertKind::sse_chain) {
        throw sekit::Error(
            "conversion from chain needs a kind 'sse-chain' certificate");
      }
      auto w = sekit::chain_to_se(std::get<sekit::SseChain>(cert.witness));
      out = sekit::make_certificate(cert.left, cert.right, std::move(w));
    }
  } catch (const sekit::InvalidWitness& e) {
    std::cerr << "certificate does not verify: " << e.what() << "\n";
    return kNegative;
  }
  attach_verdict(*out);
  write_output(opt.out_path, sekit::write_certificate(*out));
  return kOk;
}

struct ComposeOptions {
  std::string kind, cert1_path, cert2_path, out_path;
};

int run_compose(const ComposeOptions& opt) {
  sekit::CertificateFile c1 = load_certificate(opt.cert1_path);
  sekit::CertificateFile c2 = load_certificate(opt.cert2_path);
  const sekit::CertKind want =
      opt.kind == "esse" ? sekit::CertKind::esse : sekit::CertKind::se;
  if (c1.kind != want || c2.kind != want) {
    throw sekit::Error("both certificates must have kind '" + opt.kind + "'");
  }
  if (c1.right != c2.left) {
    throw sekit::Error(
        "middle matrix mismatch: cert1 right differs from cert2 left");
  }
  std::optional<sekit::CertificateFile> out;
  try {
    if (want == sekit::CertKind::esse) {
      auto composed = sekit::compose_esse_via_invertible(
          c1.left, c1.right, c2.right, std::get<sekit::EsseWitness>(c1.witness),
          std::get<sekit::EsseWitness>(c2.witness));
      if (!composed) {
        std::cerr << "not applicable: neither bridging block is a "
                     "permutation matrix\n";
        return kNegative;
      }
      out = sekit::make_certificate(c1.left, c2.right, std::move(*composed));
    } else {
      auto composed = sekit::compose_se(
          c1.left, c1.right, c2.right, std::get<sekit::SeWitness>(c1.witness),
          std::get<sekit::SeWitness>(c2.witness));
      out = sekit::make_certificate(c1.left, c2.right, std::move(composed));
    }
  } catch (const sekit::InvalidWitness& e) {
    std::cerr << "certificate does not verify: " << e.what() << "\n";
    return kNegative;
  }
  attach_verdict(*out);
  write_output(opt.out_path, sekit::write_certificate(*out));
  return kOk;
}

int run_invariants(const std::vector<std::string>& paths) {
  bool first = true;
  for (const std::string& path : paths) {
    const sekit::CorrMatrix m = load_matrix(path);
    if (!first) std::cout << "\n";
    first = false;
    std::cout << "file: " << path << "\n"
              << sekit::render_report(sekit::dilation_invariants(m));
  }
  return kOk;
}

int run_compare(const std::string& left_path, const std::string& right_path) {
  const sekit::CorrMatrix left = load_matrix(left_path);
  const sekit::CorrMatrix right = load_matrix(right_path);
  const sekit::DilationComparison cmp = sekit::compare_dilations(left, right);
  if (cmp.consistent) {
    std::cout << "consistent\n";
    return kOk;
  }
  std::cout << "obstructed: " << cmp.obstruction << "\n";
  return kNegative;
}

unsigned long long parse_budget_env(const char* text) {
  try {
    std::size_t used = 0;
    const std::string s(text);
    const unsigned long long value = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return value;
  } catch (const std::exception&) {
    throw sekit::Error(std::string("invalid SEKIT_BUDGET value '") + text +
                       "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification, search, conversion and invariants for "
               "shift-equivalence relations on non-negative integer matrices"};
  app.set_version_flag("--version", toolkit_tag());
  app.require_subcommand(1);

  int rc = kOk;

  CheckOptions check_opt;
  auto* check = app.add_subcommand(
      "check", "Re-verify a certificate against its matrices");
  check->add_option("--kind", check_opt.kind, "Certificate kind")
      ->required()
      ->check(CLI::IsMember({"esse", "sse-chain", "se", "sme"}));
  check->add_option("--cert", check_opt.cert_path, "Certificate file")
      ->required();
  check->add_option("--left", check_opt.left_path,
                    "Left matrix file (must match the certificate)");
  check->add_option("--right", check_opt.right_path,
                    "Right matrix file (must match the certificate)");
  check->callback([&]() { rc = run_check(check_opt); });

  SearchOptions search_opt;
  auto* search = app.add_subcommand(
      "search", "Brute-force search for a witness within bounds");
  search->add_option("--kind", search_opt.kind, "Relation to search")
      ->required()
      ->check(CLI::IsMember({"esse", "se", "sme"}));
  search->add_option("--left", search_opt.left_path, "Left matrix file")
      ->required();
  search->add_option("--right", search_opt.right_path, "Right matrix file")
      ->required();
  search->add_option("--max-inner-dim", search_opt.bounds.max_inner_dim,
                     "Cap on the bridge dimension")
      ->capture_default_str();
  search->add_option("--max-entry", search_opt.bounds.max_entry,
                     "Cap on witness entries")
      ->capture_default_str();
  search->add_option("--max-lag", search_opt.bounds.max_lag,
                     "Cap on the shift-equivalence lag")
      ->capture_default_str();
  auto* budget_opt =
      search->add_option("--budget", search_opt.bounds.budget,
                         "Cap on enumerated candidate matrices")
          ->capture_default_str();
  search->add_option("--out", search_opt.out_path,
                     "Certificate output file (default: stdout)");
  search->callback([&]() {
    if (budget_opt->count() == 0) {
      if (const char* env = std::getenv("SEKIT_BUDGET")) {
        search_opt.bounds.budget = parse_budget_env(env);
      }
    }
    rc = run_search(search_opt);
  });

  ConvertOptions convert_opt;
  auto* convert = app.add_subcommand(
      "convert", "Convert a certificate to a weaker relation");
  convert->add_option("--from", convert_opt.from, "Source witness form")
      ->required()
      ->check(CLI::IsMember({"sme", "chain"}));
  convert->add_option("--to", convert_opt.to, "Target witness form")
      ->required()
      ->check(CLI::IsMember({"esse", "se"}));
  convert->add_option("--cert", convert_opt.cert_path, "Certificate file")
      ->required();
  convert->add_option("--out", convert_opt.out_path,
                      "Certificate output file (default: stdout)");
  convert->callback([&]() { rc = run_convert(convert_opt); });

  ComposeOptions compose_opt;
  auto* compose = app.add_subcommand(
      "compose", "Compose two certificates through a common middle matrix");
  compose->add_option("--kind", compose_opt.kind, "Certificate kind")
      ->required()
      ->check(CLI::IsMember({"esse", "se"}));
  compose->add_option("--cert1", compose_opt.cert1_path, "First certificate")
      ->required();
  compose->add_option("--cert2", compose_opt.cert2_path, "Second certificate")
      ->required();
  compose->add_option("--out", compose_opt.out_path,
                      "Certificate output file (default: stdout)");
  compose->callback([&]() { rc = run_compose(compose_opt); });

  std::vector<std::string> invariant_paths;
  auto* invariants = app.add_subcommand(
      "invariants", "Print the dilation invariant report of matrices");
  invariants->add_option("files", invariant_paths, "Matrix files")
      ->required()
      ->expected(-1);
  invariants->callback([&]() { rc = run_invariants(invariant_paths); });

  std::string cmp_left, cmp_right;
  auto* compare = app.add_subcommand(
      "compare-dilations",
      "Check whether two matrices' dilation invariants are consistent");
  compare->add_option("--left", cmp_left, "Left matrix file")->required();
  compare->add_option("--right", cmp_right, "Right matrix file")->required();
  compare->callback([&]() { rc = run_compare(cmp_left, cmp_right); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const sekit::BoundsTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBudget;
  } catch (const sekit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return rc;
}
