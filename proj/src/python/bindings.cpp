#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sekit/convert.hpp"
#include "sekit/inflation.hpp"
#include "sekit/io.hpp"
#include "sekit/search.hpp"
#include "sekit/version.hpp"

namespace py = pybind11;

namespace {

sekit::Int to_int(py::handle v) {
  return sekit::Int(py::str(v).cast<std::string>());
}

py::object from_int(const sekit::Int& v) {
  return py::module_::import("builtins").attr("int")(v.get_str());
}

py::list from_ints(const std::vector<sekit::Int>& values) {
  py::list out;
  for (const auto& v : values) out.append(from_int(v));
  return out;
}

sekit::CorrMatrix make_matrix(const std::vector<std::vector<py::object>>& rows,
                              const std::string& row_label,
                              const std::string& col_label) {
  if (rows.empty() || rows.front().empty()) {
    throw sekit::ShapeMismatch("matrix dimensions must be positive");
  }
  const std::size_t cols = rows.front().size();
  std::vector<sekit::Int> entries;
  entries.reserve(rows.size() * cols);
  for (const auto& row : rows) {
    if (row.size() != cols) throw sekit::ShapeMismatch("ragged rows");
    for (const auto& v : row) entries.push_back(to_int(v));
  }
  return sekit::CorrMatrix(rows.size(), cols, std::move(entries), row_label,
                           col_label);
}

py::list matrix_rows(const sekit::CorrMatrix& m) {
  py::list out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    py::list row;
    for (std::size_t j = 0; j < m.cols(); ++j) row.append(from_int(m.at(i, j)));
    out.append(row);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_sekit, m) {
  m.doc() = "Exact shift-equivalence toolkit core";
  m.attr("__version__") = sekit::kVersion;

  auto error = py::register_exception<sekit::Error>(m, "Error");
  py::register_exception<sekit::DimensionMismatch>(m, "DimensionMismatch",
                                                   error);
  py::register_exception<sekit::NotSquare>(m, "NotSquare", error);
  py::register_exception<sekit::NotPermutation>(m, "NotPermutation", error);
  py::register_exception<sekit::NotRegular>(m, "NotRegular", error);
  py::register_exception<sekit::InvalidWitness>(m, "InvalidWitness", error);
  py::register_exception<sekit::BoundsTooLarge>(m, "BoundsTooLarge", error);
  py::register_exception<sekit::NegativeEntry>(m, "NegativeEntry", error);
  py::register_exception<sekit::ShapeMismatch>(m, "ShapeMismatch", error);
  py::register_exception<sekit::SchemaVersionUnsupported>(
      m, "SchemaVersionUnsupported", error);
  py::register_exception<sekit::KindMismatch>(m, "KindMismatch", error);
  py::register_exception<sekit::ParseError>(m, "MatrixParseError", error);

  py::class_<sekit::CorrMatrix>(m, "Matrix")
      .def(py::init(&make_matrix), py::arg("rows"), py::arg("row_label") = "",
           py::arg("col_label") = "")
      .def_static("identity", &sekit::CorrMatrix::identity, py::arg("n"),
                  py::arg("label") = "")
      .def_static("zero", &sekit::CorrMatrix::zero, py::arg("rows"),
                  py::arg("cols"), py::arg("row_label") = "",
                  py::arg("col_label") = "")
      .def_property_readonly("rows", &sekit::CorrMatrix::rows)
      .def_property_readonly("cols", &sekit::CorrMatrix::cols)
      .def_property_readonly("row_label", &sekit::CorrMatrix::row_label)
      .def_property_readonly("col_label", &sekit::CorrMatrix::col_label)
      .def("at",
           [](const sekit::CorrMatrix& m, std::size_t i, std::size_t j) {
             if (i >= m.rows() || j >= m.cols()) {
               throw py::index_error("matrix index out of range");
             }
             return from_int(m.at(i, j));
           })
      .def("to_rows", &matrix_rows)
      .def("is_square", &sekit::CorrMatrix::is_square)
      .def("transposed", &sekit::CorrMatrix::transposed)
      .def("relabeled", &sekit::CorrMatrix::relabeled, py::arg("row_label"),
           py::arg("col_label"))
      .def(py::self == py::self)
      .def(py::self != py::self)
      .def("__repr__", [](const sekit::CorrMatrix& m) {
        return "Matrix(" + std::to_string(m.rows()) + "x" +
               std::to_string(m.cols()) + ")";
      });

  py::class_<sekit::StructureFlags>(m, "StructureFlags")
      .def_readonly("regular", &sekit::StructureFlags::regular)
      .def_readonly("full", &sekit::StructureFlags::full)
      .def_readonly("nondegenerate", &sekit::StructureFlags::nondegenerate);

  m.def("tensor", &sekit::tensor);
  m.def("power", &sekit::power, py::arg("e"), py::arg("k"));
  m.def("direct_sum", &sekit::direct_sum);
  m.def("col_support", &sekit::col_support);
  m.def("classify", &sekit::classify);
  m.def("is_permutation_matrix", &sekit::is_permutation_matrix);

  py::class_<sekit::InflationSquare>(m, "InflationSquare")
      .def(py::init<sekit::CorrMatrix, sekit::CorrMatrix>(), py::arg("r"),
           py::arg("s"))
      .def_property_readonly("r_block", &sekit::InflationSquare::r_block)
      .def_property_readonly("s_block", &sekit::InflationSquare::s_block)
      .def_property_readonly("size", &sekit::InflationSquare::size)
      .def("materialize", &sekit::InflationSquare::materialize);
  m.def("bipartite_inflation", &sekit::bipartite_inflation);
  m.def("inflation_power", &sekit::inflation_power, py::arg("x"),
        py::arg("n"));

  py::class_<sekit::Verdict>(m, "Verdict")
      .def_readonly("accepted", &sekit::Verdict::accepted)
      .def_readonly("equation", &sekit::Verdict::equation)
      .def_readonly("row", &sekit::Verdict::row)
      .def_readonly("col", &sekit::Verdict::col)
      .def_readonly("link", &sekit::Verdict::link)
      .def_readonly("detail", &sekit::Verdict::detail)
      .def("__bool__", [](const sekit::Verdict& v) { return v.accepted; })
      .def("__repr__", [](const sekit::Verdict& v) {
        return v.accepted ? std::string("Verdict(accepted)")
                          : "Verdict(rejected: " + v.detail + ")";
      });

  py::class_<sekit::EsseWitness>(m, "EsseWitness")
      .def(py::init<sekit::CorrMatrix, sekit::CorrMatrix>(), py::arg("r"),
           py::arg("s"))
      .def_readonly("r", &sekit::EsseWitness::r)
      .def_readonly("s", &sekit::EsseWitness::s);

  py::class_<sekit::SeWitness>(m, "SeWitness")
      .def(py::init<sekit::CorrMatrix, sekit::CorrMatrix, std::size_t>(),
           py::arg("r"), py::arg("s"), py::arg("lag"))
      .def_readonly("r", &sekit::SeWitness::r)
      .def_readonly("s", &sekit::SeWitness::s)
      .def_readonly("lag", &sekit::SeWitness::lag);

  py::class_<sekit::SmeWitness>(m, "SmeWitness")
      .def(py::init<sekit::CorrMatrix>(), py::arg("p"))
      .def_readonly("p", &sekit::SmeWitness::p);

  py::class_<sekit::SseChain>(m, "SseChain")
      .def(py::init<std::vector<sekit::CorrMatrix>,
                    std::vector<sekit::EsseWitness>>(),
           py::arg("intermediates"), py::arg("links"))
      .def_readonly("intermediates", &sekit::SseChain::intermediates)
      .def_readonly("links", &sekit::SseChain::links)
      .def_property_readonly("length", &sekit::SseChain::length);

  m.def("verify_esse", &sekit::verify_esse);
  m.def("verify_sse_chain", &sekit::verify_sse_chain);
  m.def("verify_se", &sekit::verify_se);
  m.def("verify_sme", &sekit::verify_sme);

  m.def("sme_to_esse", &sekit::sme_to_esse);
  m.def("esse_to_sme_if_invertible", &sekit::esse_to_sme_if_invertible);
  m.def("chain_to_se", &sekit::chain_to_se);
  m.def("compose_se", &sekit::compose_se);
  m.def("increase_lag", &sekit::increase_lag, py::arg("e"), py::arg("f"),
        py::arg("w"), py::arg("k"));
  m.def("compose_esse_via_invertible", &sekit::compose_esse_via_invertible);

  py::class_<sekit::SearchBounds>(m, "SearchBounds")
      .def(py::init([](std::size_t max_inner_dim, unsigned long max_entry,
                       std::size_t max_lag, unsigned long long budget) {
             sekit::SearchBounds b;
             b.max_inner_dim = max_inner_dim;
             b.max_entry = max_entry;
             b.max_lag = max_lag;
             b.budget = budget;
             return b;
           }),
           py::arg("max_inner_dim") = 4, py::arg("max_entry") = 3,
           py::arg("max_lag") = 6, py::arg("budget") = 100000000ULL)
      .def_readwrite("max_inner_dim", &sekit::SearchBounds::max_inner_dim)
      .def_readwrite("max_entry", &sekit::SearchBounds::max_entry)
      .def_readwrite("max_lag", &sekit::SearchBounds::max_lag)
      .def_readwrite("budget", &sekit::SearchBounds::budget);

  m.def("search_esse", &sekit::search_esse, py::arg("e"), py::arg("f"),
        py::arg("bounds") = sekit::SearchBounds{});
  m.def("search_se", &sekit::search_se, py::arg("e"), py::arg("f"),
        py::arg("bounds") = sekit::SearchBounds{});
  m.def("search_sme", &sekit::search_sme, py::arg("e"), py::arg("f"),
        py::arg("bounds") = sekit::SearchBounds{});

  py::class_<sekit::AbelianGroup>(m, "AbelianGroup")
      .def_property_readonly(
          "torsion",
          [](const sekit::AbelianGroup& g) { return from_ints(g.torsion); })
      .def_readonly("free_rank", &sekit::AbelianGroup::free_rank)
      .def("is_trivial", &sekit::AbelianGroup::is_trivial)
      .def(py::self == py::self)
      .def("__repr__", [](const sekit::AbelianGroup& g) {
        return "AbelianGroup(" + sekit::render_group(g) + ")";
      });

  py::class_<sekit::InvariantReport>(m, "InvariantReport")
      .def_readonly("flags", &sekit::InvariantReport::flags)
      .def_readonly("bowen_franks", &sekit::InvariantReport::bowen_franks)
      .def_property_readonly("det_i_minus_a",
                             [](const sekit::InvariantReport& r) {
                               return from_int(r.det_i_minus_a);
                             })
      .def_property_readonly("nonzero_char_poly",
                             [](const sekit::InvariantReport& r) {
                               return from_ints(r.nonzero_char_poly);
                             })
      .def_readonly("k0", &sekit::InvariantReport::k0)
      .def_readonly("k1_rank", &sekit::InvariantReport::k1_rank);

  m.def("bowen_franks", &sekit::bowen_franks);
  m.def("k_theory", &sekit::k_theory);
  m.def("nonzero_char_poly", [](const sekit::CorrMatrix& e) {
    return from_ints(sekit::nonzero_char_poly(e));
  });
  m.def("dilation_invariants", &sekit::dilation_invariants);

  py::class_<sekit::DilationComparison>(m, "DilationComparison")
      .def_readonly("consistent", &sekit::DilationComparison::consistent)
      .def_readonly("obstruction", &sekit::DilationComparison::obstruction)
      .def("__bool__",
           [](const sekit::DilationComparison& c) { return c.consistent; });
  m.def("compare_dilations", &sekit::compare_dilations);

  py::enum_<sekit::CertKind>(m, "CertKind")
      .value("esse", sekit::CertKind::esse)
      .value("sse_chain", sekit::CertKind::sse_chain)
      .value("se", sekit::CertKind::se)
      .value("sme", sekit::CertKind::sme);

  py::class_<sekit::CachedVerdict>(m, "CachedVerdict")
      .def_readonly("accepted", &sekit::CachedVerdict::accepted)
      .def_readonly("toolkit", &sekit::CachedVerdict::toolkit);

  py::class_<sekit::CertificateFile>(m, "Certificate")
      .def_readonly("kind", &sekit::CertificateFile::kind)
      .def_readonly("left", &sekit::CertificateFile::left)
      .def_readonly("right", &sekit::CertificateFile::right)
      .def_property_readonly(
          "witness",
          [](const sekit::CertificateFile& c) -> py::object {
            return std::visit(
                [](const auto& w) { return py::cast(w); }, c.witness);
          })
      .def_readonly("verdict", &sekit::CertificateFile::verdict);

  m.def("make_certificate",
        py::overload_cast<sekit::CorrMatrix, sekit::CorrMatrix,
                          sekit::EsseWitness>(&sekit::make_certificate));
  m.def("make_certificate",
        py::overload_cast<sekit::CorrMatrix, sekit::CorrMatrix,
                          sekit::SeWitness>(&sekit::make_certificate));
  m.def("make_certificate",
        py::overload_cast<sekit::CorrMatrix, sekit::CorrMatrix,
                          sekit::SmeWitness>(&sekit::make_certificate));
  m.def("make_certificate",
        py::overload_cast<sekit::SseChain>(&sekit::make_certificate));

  m.def("parse_matrix", &sekit::parse_matrix);
  m.def("write_matrix", &sekit::write_matrix);
  m.def("parse_certificate", &sekit::parse_certificate);
  m.def("write_certificate", &sekit::write_certificate);
  m.def("verify_certificate", &sekit::verify_certificate);
  m.def("render_report", &sekit::render_report);
  m.def("render_group", &sekit::render_group);

  py::list all;
  for (const char* name :
       {"Matrix", "StructureFlags", "tensor", "power", "direct_sum",
        "col_support", "classify", "is_permutation_matrix", "InflationSquare",
        "bipartite_inflation", "inflation_power", "Verdict", "EsseWitness",
        "SeWitness", "SmeWitness", "SseChain", "verify_esse",
        "verify_sse_chain", "verify_se", "verify_sme", "sme_to_esse",
        "esse_to_sme_if_invertible", "chain_to_se", "compose_se",
        "increase_lag", "compose_esse_via_invertible", "SearchBounds",
        "search_esse", "search_se", "search_sme", "AbelianGroup",
        "InvariantReport", "bowen_franks", "k_theory", "nonzero_char_poly",
        "dilation_invariants", "DilationComparison", "compare_dilations",
        "CertKind", "CachedVerdict", "Certificate", "make_certificate",
        "parse_matrix", "write_matrix", "parse_certificate",
        "write_certificate", "verify_certificate", "render_report",
        "render_group", "Error", "DimensionMismatch", "NotSquare",
        "NotPermutation", "NotRegular", "InvalidWitness", "BoundsTooLarge",
        "NegativeEntry", "ShapeMismatch", "SchemaVersionUnsupported",
        "KindMismatch", "MatrixParseError"}) {
    all.append(name);
  }
  m.attr("__all__") = all;
}
