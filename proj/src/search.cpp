#include "sekit/search.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <utility>

#include "sekit/verify.hpp"

namespace sekit {

namespace {

void require_state_matrix(const CorrMatrix& m, const char* name) {
  if (!m.is_square()) {
    throw DimensionMismatch(std::string(name) +
                            " must be square over a single vertex set");
  }
}

void budget_gate(const mpz_class& candidates, unsigned long long budget) {
  const mpz_class limit(std::to_string(budget));
  if (candidates > limit) {
    throw BoundsTooLarge("search would range over " + candidates.get_str() +
                         " candidate matrices, budget is " +
                         limit.get_str());
  }
}

mpz_class pow_count(unsigned long max_entry, std::size_t cells) {
  mpz_class base = mpz_class(max_entry) + 1;
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), cells);
  return out;
}

template <typename Scalar>
struct Grid {
  std::size_t rows = 0, cols = 0;
  std::vector<Scalar> v;

  Grid() = default;
  Grid(std::size_t r, std::size_t c) : rows(r), cols(c), v(r * c, Scalar(0)) {}
  Scalar& at(std::size_t i, std::size_t j) { return v[i * cols + j]; }
  const Scalar& at(std::size_t i, std::size_t j) const {
    return v[i * cols + j];
  }
};

template <typename Scalar>
struct LinTerm {
  std::size_t var;
  Scalar coef;
};

/// DFS over candidate entry vectors in [0, max_entry]^n, visited in
/// lexicographic order, pruned through linear constraints
///   lo <= sum coef_i * x_i (<= hi).
/// Pruning uses interval arithmetic over the unassigned suffix, so a branch
/// is cut exactly when no completion can satisfy some constraint.
template <typename Scalar>
class BoundedSolver {
 public:
  BoundedSolver(std::size_t num_vars, unsigned long max_entry)
      : me_(static_cast<long>(max_entry)),
        vals_(num_vars, Scalar(0)),
        touching_(num_vars) {}

  void add_eq(std::vector<LinTerm<Scalar>> terms, Scalar target) {
    add(std::move(terms), target, true, target);
  }

  void add_ge(std::vector<LinTerm<Scalar>> terms, Scalar min_value) {
    add(std::move(terms), std::move(min_value), false, Scalar(0));
  }

  /// Runs the enumeration; stops early when on_leaf returns true. Single use.
  bool run(const std::function<bool(const std::vector<Scalar>&)>& on_leaf) {
    if (infeasible_) return false;
    return dfs(0, on_leaf);
  }

 private:
  struct Constraint {
    Scalar lo, hi;
    bool has_hi;
    Scalar cur, pos_rem, neg_rem;
  };

  void add(std::vector<LinTerm<Scalar>> terms, Scalar lo, bool has_hi,
           Scalar hi) {
    std::sort(terms.begin(), terms.end(),
              [](const LinTerm<Scalar>& a, const LinTerm<Scalar>& b) {
                return a.var < b.var;
              });
    std::vector<LinTerm<Scalar>> merged;
    for (auto& t : terms) {
      if (!merged.empty() && merged.back().var == t.var) {
        merged.back().coef += t.coef;
      } else {
        merged.push_back(std::move(t));
      }
    }
    std::erase_if(merged, [](const LinTerm<Scalar>& t) { return t.coef == 0; });

    Constraint c;
    c.lo = std::move(lo);
    c.hi = std::move(hi);
    c.has_hi = has_hi;
    c.cur = 0;
    c.pos_rem = 0;
    c.neg_rem = 0;
    for (const auto& t : merged) {
      if (t.coef > 0) {
        c.pos_rem += t.coef * me_;
      } else {
        c.neg_rem += t.coef * me_;
      }
    }
    if (c.cur + c.pos_rem < c.lo || (c.has_hi && c.cur + c.neg_rem > c.hi)) {
      infeasible_ = true;
    }
    const std::size_t idx = cons_.size();
    cons_.push_back(std::move(c));
    for (const auto& t : merged) {
      touching_[t.var].push_back({idx, t.coef});
    }
  }

  bool dfs(std::size_t v,
           const std::function<bool(const std::vector<Scalar>&)>& on_leaf) {
    if (v == vals_.size()) return on_leaf(vals_);
    const auto& touched = touching_[v];
    for (long val = 0; val <= me_; ++val) {
      vals_[v] = Scalar(val);
      bool ok = true;
      for (const auto& [ci, coef] : touched) {
        Constraint& c = cons_[ci];
        c.cur += coef * val;
        if (coef > 0) {
          c.pos_rem -= coef * me_;
        } else {
          c.neg_rem -= coef * me_;
        }
      }
      for (const auto& [ci, coef] : touched) {
        const Constraint& c = cons_[ci];
        if (c.cur + c.pos_rem < c.lo ||
            (c.has_hi && c.cur + c.neg_rem > c.hi)) {
          ok = false;
          break;
        }
      }
      if (ok && dfs(v + 1, on_leaf)) return true;
      for (const auto& [ci, coef] : touched) {
        Constraint& c = cons_[ci];
        c.cur -= coef * val;
        if (coef > 0) {
          c.pos_rem += coef * me_;
        } else {
          c.neg_rem += coef * me_;
        }
      }
    }
    return false;
  }

  long me_;
  bool infeasible_ = false;
  std::vector<Scalar> vals_;
  std::vector<Constraint> cons_;
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> touching_;
};

/// A witness pair (R, S) must satisfy R*S == T1, S*R == T2 together with the
/// intertwining relations E*R == R*F and S*E == F*S (for the elementary case
/// T1 = E, T2 = F the intertwinings are consequences, so posing them only
/// prunes). The R phase enumerates candidates constrained by E*R == R*F plus
/// capacity lower bounds from the targets; for each the S phase solves the
/// remaining exact system. First leaf found is the lexicographic minimum.
template <typename Scalar>
struct PairSearchInput {
  Grid<Scalar> e, f, t1, t2;
  unsigned long max_entry;
};

template <typename Scalar>
std::optional<std::pair<std::vector<Scalar>, std::vector<Scalar>>>
find_bridge_pair(const PairSearchInput<Scalar>& in) {
  const std::size_t a = in.e.rows, b = in.f.rows;
  const unsigned long me = in.max_entry;
  const Scalar sme_scalar = Scalar(static_cast<long>(me));

  BoundedSolver<Scalar> r_solver(a * b, me);
  for (std::size_t k = 0; k < a; ++k) {
    for (std::size_t j = 0; j < b; ++j) {
      std::vector<LinTerm<Scalar>> terms;
      for (std::size_t l = 0; l < a; ++l) {
        terms.push_back({l * b + j, in.e.at(k, l)});
      }
      for (std::size_t l = 0; l < b; ++l) {
        terms.push_back({k * b + l, -in.f.at(l, j)});
      }
      r_solver.add_eq(std::move(terms), Scalar(0));
    }
  }
  if (me >= 1) {
    for (std::size_t i = 0; i < a; ++i) {
      Scalar row_max(0);
      for (std::size_t j = 0; j < a; ++j) {
        row_max = std::max(row_max, in.t1.at(i, j));
      }
      if (row_max > 0) {
        std::vector<LinTerm<Scalar>> terms;
        for (std::size_t k = 0; k < b; ++k) terms.push_back({i * b + k, 1});
        r_solver.add_ge(std::move(terms),
                        (row_max + sme_scalar - 1) / sme_scalar);
      }
    }
    for (std::size_t j = 0; j < b; ++j) {
      Scalar col_max(0);
      for (std::size_t i = 0; i < b; ++i) {
        col_max = std::max(col_max, in.t2.at(i, j));
      }
      if (col_max > 0) {
        std::vector<LinTerm<Scalar>> terms;
        for (std::size_t k = 0; k < a; ++k) terms.push_back({k * b + j, 1});
        r_solver.add_ge(std::move(terms),
                        (col_max + sme_scalar - 1) / sme_scalar);
      }
    }
  }

  std::optional<std::pair<std::vector<Scalar>, std::vector<Scalar>>> found;
  r_solver.run([&](const std::vector<Scalar>& r_vals) {
    Grid<Scalar> r(a, b);
    r.v = r_vals;
    BoundedSolver<Scalar> s_solver(b * a, me);
    for (std::size_t i = 0; i < a; ++i) {
      for (std::size_t j = 0; j < a; ++j) {
        std::vector<LinTerm<Scalar>> terms;
        for (std::size_t k = 0; k < b; ++k) {
          if (r.at(i, k) != 0) terms.push_back({k * a + j, r.at(i, k)});
        }
        s_solver.add_eq(std::move(terms), in.t1.at(i, j));
      }
    }
    for (std::size_t k = 0; k < b; ++k) {
      for (std::size_t t = 0; t < b; ++t) {
        std::vector<LinTerm<Scalar>> terms;
        for (std::size_t j = 0; j < a; ++j) {
          if (r.at(j, t) != 0) terms.push_back({k * a + j, r.at(j, t)});
        }
        s_solver.add_eq(std::move(terms), in.t2.at(k, t));
      }
    }
    for (std::size_t t = 0; t < b; ++t) {
      for (std::size_t j = 0; j < a; ++j) {
        std::vector<LinTerm<Scalar>> terms;
        for (std::size_t c = 0; c < a; ++c) {
          terms.push_back({t * a + c, in.e.at(c, j)});
        }
        for (std::size_t l = 0; l < b; ++l) {
          terms.push_back({l * a + j, -in.f.at(t, l)});
        }
        s_solver.add_eq(std::move(terms), Scalar(0));
      }
    }
    return s_solver.run([&](const std::vector<Scalar>& s_vals) {
      found = {r_vals, s_vals};
      return true;
    });
  });
  return found;
}

Grid<Int> to_grid(const CorrMatrix& m) {
  Grid<Int> g(m.rows(), m.cols());
  g.v = m.entries();
  return g;
}

/// True when every value involved keeps interval arithmetic inside a long.
bool fits_fast_path(const std::vector<const CorrMatrix*>& mats,
                    unsigned long max_entry, std::size_t dim_sum) {
  mpz_class max_abs = 0;
  for (const CorrMatrix* m : mats) {
    for (const Int& v : m->entries()) {
      Int mag = abs(v);
      if (mag > max_abs) max_abs = mag;
    }
  }
  const mpz_class worst = (max_abs + 1) * (mpz_class(max_entry) + 1) *
                          mpz_class(static_cast<unsigned long>(dim_sum + 2)) *
                          4;
  mpz_class limit;
  mpz_ui_pow_ui(limit.get_mpz_t(), 2, 61);
  return worst < limit;
}

Grid<long> to_long_grid(const CorrMatrix& m) {
  Grid<long> g(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.entries().size(); ++i) {
    g.v[i] = m.entries()[i].get_si();
  }
  return g;
}

std::vector<Int> to_entries(const std::vector<long>& vals) {
  return std::vector<Int>(vals.begin(), vals.end());
}

std::vector<Int> to_entries(const std::vector<Int>& vals) { return vals; }

/// Shared enumeration core: a lag-m witness satisfies the same shape of
/// system as an elementary one with targets E^m, F^m.
std::optional<EsseWitness> search_pair(const CorrMatrix& e, const CorrMatrix& f,
                                       const CorrMatrix& t1,
                                       const CorrMatrix& t2,
                                       unsigned long max_entry) {
  const std::size_t a = e.rows(), b = f.rows();
  auto wrap = [&](std::vector<Int> r_entries, std::vector<Int> s_entries) {
    return EsseWitness{CorrMatrix(a, b, std::move(r_entries), e.row_label(),
                                  f.row_label()),
                       CorrMatrix(b, a, std::move(s_entries), f.row_label(),
                                  e.row_label())};
  };
  if (fits_fast_path({&e, &f, &t1, &t2}, max_entry, a + b)) {
    PairSearchInput<long> in{to_long_grid(e), to_long_grid(f),
                             to_long_grid(t1), to_long_grid(t2), max_entry};
    auto hit = find_bridge_pair(in);
    if (!hit) return std::nullopt;
    return wrap(to_entries(hit->first), to_entries(hit->second));
  }
  PairSearchInput<Int> in{to_grid(e), to_grid(f), to_grid(t1), to_grid(t2),
                          max_entry};
  auto hit = find_bridge_pair(in);
  if (!hit) return std::nullopt;
  return wrap(to_entries(hit->first), to_entries(hit->second));
}

}  // namespace

std::optional<EsseWitness> search_esse(const CorrMatrix& e, const CorrMatrix& f,
                                       const SearchBounds& bounds) {
  require_state_matrix(e, "E");
  require_state_matrix(f, "F");
  const std::size_t a = e.rows(), b = f.rows();
  if (b > bounds.max_inner_dim) return std::nullopt;
  budget_gate(pow_count(bounds.max_entry, a * b) +
                  pow_count(bounds.max_entry, b * a),
              bounds.budget);
  auto hit = search_pair(e, f, e, f, bounds.max_entry);
  if (!hit) return std::nullopt;
  Verdict v = verify_esse(e, f, *hit);
  if (!v) throw std::logic_error("search_esse returned a rejected witness");
  return hit;
}

std::optional<SeWitness> search_se(const CorrMatrix& e, const CorrMatrix& f,
                                   const SearchBounds& bounds) {
  require_state_matrix(e, "E");
  require_state_matrix(f, "F");
  const std::size_t a = e.rows(), b = f.rows();
  if (b > bounds.max_inner_dim) return std::nullopt;
  budget_gate(mpz_class(static_cast<unsigned long>(bounds.max_lag)) *
                  (pow_count(bounds.max_entry, a * b) +
                   pow_count(bounds.max_entry, b * a)),
              bounds.budget);
  for (std::size_t lag = 1; lag <= bounds.max_lag; ++lag) {
    auto hit = search_pair(e, f, power(e, lag), power(f, lag),
                           bounds.max_entry);
    if (!hit) continue;
    SeWitness w(hit->r, hit->s, lag);
    Verdict v = verify_se(e, f, w);
    if (!v) throw std::logic_error("search_se returned a rejected witness");
    return w;
  }
  return std::nullopt;
}

std::optional<SmeWitness> search_sme(const CorrMatrix& e, const CorrMatrix& f,
                                     const SearchBounds& bounds) {
  require_state_matrix(e, "E");
  require_state_matrix(f, "F");
  if (e.rows() != f.rows()) return std::nullopt;
  const std::size_t n = e.rows();
  if (n > 8) {
    throw BoundsTooLarge("permutation search limited to size 8, got " +
                         std::to_string(n));
  }
  mpz_class count;
  mpz_fac_ui(count.get_mpz_t(), n);
  budget_gate(count, bounds.budget);

  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    // E*P == P*F for P[i][sigma(i)] = 1 reduces to E[i][k] == F[s(i)][s(k)].
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        if (e.at(i, k) != f.at(sigma[i], sigma[k])) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;
    std::vector<Int> entries(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) entries[i * n + sigma[i]] = 1;
    SmeWitness w{CorrMatrix(n, n, std::move(entries), e.row_label(),
                            f.row_label())};
    Verdict v = verify_sme(e, f, w);
    if (!v) throw std::logic_error("search_sme returned a rejected witness");
    return w;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return std::nullopt;
}

}  // namespace sekit
