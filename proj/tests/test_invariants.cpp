#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sekit/invariants.hpp"
#include "sekit/search.hpp"
#include "testutil.hpp"

using namespace sekit;
using testutil::Rng;

namespace {

CorrMatrix mat(const std::vector<std::vector<long>>& rows) {
  return CorrMatrix::from_rows(rows);
}

IntMatrix imat(const std::vector<std::vector<long>>& rows) {
  return IntMatrix::from_rows(rows);
}

bool is_diag(const IntMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (i != j && m.at(i, j) != 0) return false;
    }
  }
  return true;
}

std::vector<Int> poly_of(const std::vector<std::vector<long>>& rows) {
  return nonzero_char_poly(mat(rows));
}

std::vector<Int> coeffs(const std::vector<long>& v) {
  return std::vector<Int>(v.begin(), v.end());
}

}  // namespace

TEST_CASE("smith normal form on known matrices") {
  const SnfResult id = smith_normal_form(IntMatrix::identity(2));
  CHECK(id.d == IntMatrix::identity(2));

  const SnfResult gm = smith_normal_form(imat({{0, -1}, {-1, 1}}));
  CHECK(gm.d == IntMatrix::identity(2));

  const SnfResult dg = smith_normal_form(imat({{2, 0}, {0, 4}}));
  CHECK(dg.d == imat({{2, 0}, {0, 4}}));

  const SnfResult anti = smith_normal_form(imat({{0, 4}, {6, 0}}));
  CHECK(anti.d == imat({{2, 0}, {0, 12}}));
}

TEST_CASE("smith normal form is a verified decomposition on random input") {
  Rng rng(401);
  std::uniform_int_distribution<long> entry(-9, 9);
  for (int it = 0; it < 150; ++it) {
    const std::size_t n = testutil::pick(rng, 1, 5);
    IntMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m.at(i, j) = entry(rng);
    }
    const SnfResult snf = smith_normal_form(m);
    CHECK(snf.u * m * snf.v == snf.d);
    CHECK(is_diag(snf.d));
    CHECK(abs(determinant(snf.u)) == 1);
    CHECK(abs(determinant(snf.v)) == 1);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(snf.d.at(i, i) >= 0);
      if (i + 1 < n && snf.d.at(i, i) != 0) {
        CHECK(snf.d.at(i + 1, i + 1) % snf.d.at(i, i) == 0);
      }
    }
  }
}

TEST_CASE("bowen_franks groups of the classics") {
  CHECK(bowen_franks(mat({{1, 1}, {1, 0}})).is_trivial());
  CHECK(bowen_franks(mat({{2}})).is_trivial());

  const AbelianGroup three = bowen_franks(mat({{3}}));
  CHECK(three.torsion == coeffs({2}));
  CHECK(three.free_rank == 0);

  const AbelianGroup id2 = bowen_franks(CorrMatrix::identity(2));
  CHECK(id2.torsion.empty());
  CHECK(id2.free_rank == 2);

  CHECK_THROWS_AS(bowen_franks(mat({{1, 2}})), NotSquare);
}

TEST_CASE("k_theory matches the Cuntz algebra classics") {
  for (long n = 2; n <= 5; ++n) {
    const auto [k0, k1_rank] = k_theory(mat({{n}}));
    CHECK(k1_rank == 0);
    CHECK(k0.free_rank == 0);
    if (n == 2) {
      CHECK(k0.is_trivial());
    } else {
      CHECK(k0.torsion == coeffs({n - 1}));
    }
  }

  const auto [gm_k0, gm_k1] = k_theory(mat({{1, 1}, {1, 0}}));
  CHECK(gm_k0.is_trivial());
  CHECK(gm_k1 == 0);

  const auto [id_k0, id_k1] = k_theory(CorrMatrix::identity(2));
  CHECK(id_k0.torsion.empty());
  CHECK(id_k0.free_rank == 2);
  CHECK(id_k1 == 2);

  CHECK_THROWS_AS(k_theory(mat({{1, 0}, {1, 0}})), NotRegular);
}

TEST_CASE("k1 rank equals the free rank of k0") {
  Rng rng(402);
  for (int it = 0; it < 100; ++it) {
    const CorrMatrix e = testutil::random_state_matrix(rng, 5, 3, "A");
    if (!classify(e).regular) continue;
    const auto [k0, k1_rank] = k_theory(e);
    CHECK(k1_rank == k0.free_rank);
  }
}

TEST_CASE("nonzero characteristic polynomials") {
  CHECK(poly_of({{1, 1}, {1, 0}}) == coeffs({-1, -1, 1}));  // t^2 - t - 1
  CHECK(poly_of({{2}}) == coeffs({-2, 1}));                 // t - 2
  CHECK(poly_of({{0, 1}, {0, 0}}) == coeffs({1}));          // all spectrum at 0
  CHECK(poly_of({{1, 1}, {1, 1}}) == coeffs({-2, 1}));      // t(t-2) stripped
  CHECK(poly_of({{1, 0}, {0, 1}}) == coeffs({1, -2, 1}));   // (t-1)^2 kept
}

TEST_CASE("RS and SR have the same nonzero spectrum") {
  Rng rng(403);
  for (int it = 0; it < 200; ++it) {
    const std::size_t a = testutil::pick(rng, 1, 5);
    const std::size_t b = testutil::pick(rng, 1, 5);
    const CorrMatrix r = testutil::random_matrix(rng, a, b, 4, "A", "B");
    const CorrMatrix s = testutil::random_matrix(rng, b, a, 4, "B", "A");
    const auto poly = nonzero_char_poly(tensor(r, s));
    CHECK(poly == nonzero_char_poly(tensor(s, r)));
    CHECK(poly.front() != 0);
    CHECK(poly.back() == 1);
  }
}

TEST_CASE("bowen_franks is invariant under permutation conjugation") {
  Rng rng(404);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (int it = 0; it < 10; ++it) {
      const CorrMatrix e = testutil::random_matrix(rng, n, n, 4, "A", "A");
      std::vector<std::size_t> sigma(n);
      for (std::size_t i = 0; i < n; ++i) sigma[i] = i;
      do {
        std::vector<Int> entries(n * n, 0);
        for (std::size_t i = 0; i < n; ++i) entries[i * n + sigma[i]] = 1;
        const CorrMatrix p(n, n, entries, "A", "A");
        const CorrMatrix conj = tensor(tensor(p.transposed(), e), p);
        CHECK(bowen_franks(conj) == bowen_franks(e));
      } while (std::next_permutation(sigma.begin(), sigma.end()));
    }
  }
}

TEST_CASE("dilation_invariants") {
  const InvariantReport two = dilation_invariants(mat({{2}}));
  CHECK(two.flags.regular);
  CHECK(two.bowen_franks.is_trivial());
  CHECK(two.det_i_minus_a == -1);
  CHECK(two.nonzero_char_poly == coeffs({-2, 1}));
  REQUIRE(two.k0.has_value());
  CHECK(two.k0->is_trivial());
  CHECK(two.k1_rank == 0);

  const InvariantReport golden = dilation_invariants(mat({{1, 1}, {1, 0}}));
  CHECK(golden.bowen_franks.is_trivial());
  CHECK(golden.det_i_minus_a == -1);
  CHECK(golden.nonzero_char_poly == coeffs({-1, -1, 1}));
  REQUIRE(golden.k0.has_value());
  CHECK(golden.k0->is_trivial());

  const InvariantReport id2 = dilation_invariants(CorrMatrix::identity(2));
  CHECK(id2.bowen_franks.free_rank == 2);
  CHECK(id2.det_i_minus_a == 0);
  CHECK(id2.nonzero_char_poly == coeffs({1, -2, 1}));
  REQUIRE(id2.k0.has_value());
  CHECK(id2.k0->free_rank == 2);
  CHECK(id2.k1_rank == 2);

  const InvariantReport degenerate = dilation_invariants(mat({{1, 0},
                                                              {1, 0}}));
  CHECK_FALSE(degenerate.flags.regular);
  CHECK_FALSE(degenerate.k0.has_value());
  CHECK_FALSE(degenerate.k1_rank.has_value());
}

TEST_CASE("compare_dilations") {
  const auto same = compare_dilations(mat({{1, 1}, {1, 1}}), mat({{2}}));
  CHECK(same.consistent);

  const auto diff = compare_dilations(mat({{2}}), mat({{3}}));
  CHECK_FALSE(diff.consistent);
  CHECK(diff.obstruction == "bowen_franks");

  const auto self = compare_dilations(mat({{1, 1}, {1, 0}}),
                                      mat({{1, 1}, {1, 0}}));
  CHECK(self.consistent);

  // same group, different spectrum
  const auto spectral = compare_dilations(mat({{2}}), mat({{1, 1}, {1, 0}}));
  CHECK_FALSE(spectral.consistent);
  CHECK(spectral.obstruction == "nonzero_char_poly");
}

TEST_CASE("accepted witnesses imply consistent invariants") {
  Rng rng(405);
  for (int it = 0; it < 100; ++it) {
    const auto planted = testutil::plant_esse(rng, 4, 3);
    const auto cmp = compare_dilations(planted.e, planted.f);
    CHECK(cmp.consistent);
  }
  for (int it = 0; it < 50; ++it) {
    const auto planted = testutil::plant_sme(rng, 4, 3);
    CHECK(compare_dilations(planted.e, planted.f).consistent);
  }
}

TEST_CASE("shared immutable values are safe to read concurrently") {
  const CorrMatrix golden = mat({{1, 1}, {1, 0}});
  const CorrMatrix full2 = mat({{1, 1}, {1, 1}});
  std::vector<std::thread> workers;
  std::atomic<int> failures{0};
  for (int t = 0; t < 4; ++t) {
    workers.emplace_back([&] {
      for (int it = 0; it < 50; ++it) {
        if (!compare_dilations(golden, golden).consistent) ++failures;
        if (dilation_invariants(full2).nonzero_char_poly !=
            coeffs({-2, 1})) {
          ++failures;
        }
        if (power(golden, 5).at(0, 0) != 8) ++failures;
      }
    });
  }
  for (auto& w : workers) w.join();
  CHECK(failures == 0);
}

TEST_CASE("no shift equivalence from the classics to a permutation") {
  // regular full non-permutation matrices against every permutation of
  // their size: the searches must come back empty
  SearchBounds b;
  b.max_lag = 4;

  const std::vector<CorrMatrix> perms2 = {CorrMatrix::identity(2),
                                          mat({{0, 1}, {1, 0}})};
  for (const CorrMatrix& e : {mat({{1, 1}, {1, 0}}), mat({{1, 1}, {1, 1}})}) {
    for (const CorrMatrix& p : perms2) {
      CHECK_FALSE(search_se(e, p, b).has_value());
      CHECK_FALSE(search_esse(e, p, b).has_value());
    }
  }
  CHECK_FALSE(search_se(mat({{2}}), CorrMatrix::identity(1), b).has_value());
}
