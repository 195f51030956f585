#include "sekit/snf.hpp"

#include <optional>
#include <stdexcept>
#include <utility>

namespace sekit {

IntMatrix::IntMatrix(std::size_t n, std::vector<Int> entries)
    : n_(n), e_(std::move(entries)) {
  if (e_.size() != n_ * n_) {
    throw ShapeMismatch("expected " + std::to_string(n_ * n_) +
                        " entries, got " + std::to_string(e_.size()));
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  IntMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw ShapeMismatch("ragged rows");
    for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size();
  IntMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Int& v = a.at(i, k);
      if (v == 0) continue;
      for (std::size_t j = 0; j < n; ++j) out.at(i, j) += v * b.at(k, j);
    }
  }
  return out;
}

namespace {

struct Reduction {
  IntMatrix a, u, v;

  explicit Reduction(const IntMatrix& m)
      : a(m), u(IntMatrix::identity(m.size())),
        v(IntMatrix::identity(m.size())) {}

  std::size_t n() const { return a.size(); }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < n(); ++k) {
      std::swap(a.at(i, k), a.at(j, k));
      std::swap(u.at(i, k), u.at(j, k));
    }
  }

  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < n(); ++k) {
      std::swap(a.at(k, i), a.at(k, j));
      std::swap(v.at(k, i), v.at(k, j));
    }
  }

  // row i -= q * row j
  void submul_row(std::size_t i, std::size_t j, const Int& q) {
    for (std::size_t k = 0; k < n(); ++k) {
      a.at(i, k) -= q * a.at(j, k);
      u.at(i, k) -= q * u.at(j, k);
    }
  }

  // col i -= q * col j
  void submul_col(std::size_t i, std::size_t j, const Int& q) {
    for (std::size_t k = 0; k < n(); ++k) {
      a.at(k, i) -= q * a.at(k, j);
      v.at(k, i) -= q * v.at(k, j);
    }
  }

  void add_row(std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < n(); ++k) {
      a.at(i, k) += a.at(j, k);
      u.at(i, k) += u.at(j, k);
    }
  }

  void negate_row(std::size_t i) {
    for (std::size_t k = 0; k < n(); ++k) {
      a.at(i, k) = -a.at(i, k);
      u.at(i, k) = -u.at(i, k);
    }
  }

  std::optional<std::pair<std::size_t, std::size_t>> minimal_pivot(
      std::size_t t) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Int best_abs;
    for (std::size_t i = t; i < n(); ++i) {
      for (std::size_t j = t; j < n(); ++j) {
        if (a.at(i, j) == 0) continue;
        Int mag = abs(a.at(i, j));
        if (!best || mag < best_abs) {
          best = {{i, j}};
          best_abs = mag;
        }
      }
    }
    return best;
  }
};

}  // namespace

SnfResult smith_normal_form(const IntMatrix& m) {
  const std::size_t n = m.size();
  Reduction red(m);

  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      auto pivot = red.minimal_pivot(t);
      if (!pivot) break;  // remaining block is zero
      red.swap_rows(t, pivot->first);
      red.swap_cols(t, pivot->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        if (red.a.at(i, t) == 0) continue;
        Int q = red.a.at(i, t) / red.a.at(t, t);
        if (q != 0) red.submul_row(i, t, q);
        if (red.a.at(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (red.a.at(t, j) == 0) continue;
        Int q = red.a.at(t, j) / red.a.at(t, t);
        if (q != 0) red.submul_col(j, t, q);
        if (red.a.at(t, j) != 0) clean = false;
      }
      if (!clean) continue;  // smaller remainders become the next pivot

      // Divisibility: fold a non-divisible entry into row t and re-reduce.
      bool divisible = true;
      for (std::size_t i = t + 1; i < n && divisible; ++i) {
        for (std::size_t j = t + 1; j < n; ++j) {
          if (red.a.at(i, j) % red.a.at(t, t) != 0) {
            red.add_row(t, i);
            divisible = false;
            break;
          }
        }
      }
      if (divisible) break;
    }
  }

  for (std::size_t t = 0; t < n; ++t) {
    if (red.a.at(t, t) < 0) red.negate_row(t);
  }

  if (!(red.u * m * red.v == red.a)) {
    throw std::logic_error("Smith normal form self-check failed");
  }
  for (std::size_t t = 0; t + 1 < n; ++t) {
    const Int& d0 = red.a.at(t, t);
    const Int& d1 = red.a.at(t + 1, t + 1);
    if (d0 == 0 ? d1 != 0 : d1 % d0 != 0) {
      throw std::logic_error("Smith normal form divisibility chain broken");
    }
  }
  return SnfResult{std::move(red.u), std::move(red.a), std::move(red.v)};
}

std::vector<Int> char_poly(const IntMatrix& m) {
  const std::size_t n = m.size();
  std::vector<Int> coeffs(n + 1, 0);
  coeffs[n] = 1;
  // Faddeev-LeVerrier: N_1 = M, a_k = -tr(N_k)/k, N_{k+1} = M*(N_k + a_k*I).
  IntMatrix nk = m;
  for (std::size_t k = 1; k <= n; ++k) {
    Int trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += nk.at(i, i);
    Int ak, rem;
    mpz_tdiv_qr(ak.get_mpz_t(), rem.get_mpz_t(), Int(-trace).get_mpz_t(),
                Int(static_cast<long>(k)).get_mpz_t());
    if (rem != 0) throw std::logic_error("char_poly: inexact division");
    coeffs[n - k] = ak;
    if (k == n) break;
    for (std::size_t i = 0; i < n; ++i) nk.at(i, i) += ak;
    nk = m * nk;
  }
  return coeffs;
}

Int determinant(const IntMatrix& m) {
  // char(0) = det(-M) = (-1)^n det(M).
  const std::vector<Int> coeffs = char_poly(m);
  Int det = coeffs[0];
  if (m.size() % 2 == 1) det = -det;
  return det;
}

}  // namespace sekit
