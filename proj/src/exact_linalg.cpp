#include "toric/exact_linalg.hpp"

#include <algorithm>
#include <utility>

namespace toric {
namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer abs_value(const Integer& a) { return a < 0 ? Integer(-a) : a; }

using RatMatrix = std::vector<std::vector<Rational>>;

RatMatrix to_rational(const IntMatrix& a) {
  RatMatrix m(a.rows(), std::vector<Rational>(a.cols()));
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) m[r][c] = a(r, c);
  return m;
}

}  // namespace

HermiteDecomposition hermite_normal_form(const IntMatrix& a) {
  if (a.empty()) throw InputError("hermite_normal_form: empty matrix");
  IntMatrix h = a;
  IntMatrix u = IntMatrix::identity(a.cols());
  std::size_t pivot_col = 0;
  for (std::size_t row = 0; row < h.rows() && pivot_col < h.cols(); ++row) {
    // Euclid across the columns pivot_col.. of this row.
    for (;;) {
      std::size_t best = h.cols();
      for (std::size_t j = pivot_col; j < h.cols(); ++j) {
        if (h(row, j) == 0) continue;
        if (best == h.cols() || abs_value(h(row, j)) < abs_value(h(row, best))) best = j;
      }
      if (best == h.cols()) break;
      h.swap_columns(pivot_col, best);
      u.swap_columns(pivot_col, best);
      bool done = true;
      for (std::size_t j = pivot_col + 1; j < h.cols(); ++j) {
        if (h(row, j) == 0) continue;
        Integer q = floor_div(h(row, j), h(row, pivot_col));
        h.add_column_multiple(j, pivot_col, -q);
        u.add_column_multiple(j, pivot_col, -q);
        if (h(row, j) != 0) done = false;
      }
      if (done) break;
    }
    if (h(row, pivot_col) == 0) continue;
    if (h(row, pivot_col) < 0) {
      h.negate_column(pivot_col);
      u.negate_column(pivot_col);
    }
    for (std::size_t j = 0; j < pivot_col; ++j) {
      Integer q = floor_div(h(row, j), h(row, pivot_col));
      h.add_column_multiple(j, pivot_col, -q);
      u.add_column_multiple(j, pivot_col, -q);
    }
    ++pivot_col;
  }
  return {std::move(h), std::move(u), pivot_col};
}

HermiteDecomposition row_hermite_normal_form(const IntMatrix& a) {
  HermiteDecomposition t = hermite_normal_form(a.transpose());
  return {t.H.transpose(), t.U.transpose(), t.rank};
}

std::vector<Integer> SmithDecomposition::invariant_factors() const {
  std::vector<Integer> f;
  for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) f.push_back(S(i, i));
  return f;
}

std::size_t SmithDecomposition::rank() const {
  std::size_t r = 0;
  for (const auto& d : invariant_factors())
    if (d != 0) ++r;
  return r;
}

SmithDecomposition smith_normal_form(const IntMatrix& a) {
  if (a.empty()) throw InputError("smith_normal_form: empty matrix");
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  IntMatrix s = a;
  IntMatrix u = IntMatrix::identity(m);
  IntMatrix v = IntMatrix::identity(n);

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // Smallest nonzero absolute value; row-major scan breaks ties by index.
      std::size_t pr = m, pc = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (s(i, j) == 0) continue;
          if (pr == m || abs_value(s(i, j)) < abs_value(s(pr, pc))) {
            pr = i;
            pc = j;
          }
        }
      if (pr == m) break;
      s.swap_rows(t, pr);
      u.swap_rows(t, pr);
      s.swap_columns(t, pc);
      v.swap_columns(t, pc);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (s(i, t) == 0) continue;
        Integer q = floor_div(s(i, t), s(t, t));
        s.add_row_multiple(i, t, -q);
        u.add_row_multiple(i, t, -q);
        if (s(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (s(t, j) == 0) continue;
        Integer q = floor_div(s(t, j), s(t, t));
        s.add_column_multiple(j, t, -q);
        v.add_column_multiple(j, t, -q);
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j) {
          if (!mpz_divisible_p(s(i, j).get_mpz_t(), s(t, t).get_mpz_t())) {
            s.add_row_multiple(t, i, Integer(1));
            u.add_row_multiple(t, i, Integer(1));
            divides = false;
            break;
          }
        }
      if (divides) break;
    }
    if (s(t, t) < 0) {
      s.negate_row(t);
      u.negate_row(t);
    }
  }
  return {std::move(s), std::move(u), std::move(v)};
}

std::vector<IntVector> lattice_basis(const std::vector<IntVector>& generators, std::size_t dim) {
  if (generators.empty() || dim == 0) return {};
  HermiteDecomposition h = row_hermite_normal_form(IntMatrix::from_rows(generators, dim));
  std::vector<IntVector> basis;
  for (std::size_t r = 0; r < h.rank; ++r) basis.push_back(h.H.row(r));
  return basis;
}

std::vector<IntVector> integer_kernel(const IntMatrix& a) {
  if (a.cols() == 0) return {};
  if (a.rows() == 0) return IntMatrix::identity(a.cols()).row_vectors();
  SmithDecomposition snf = smith_normal_form(a);
  std::size_t r = snf.rank();
  std::vector<IntVector> gens;
  for (std::size_t j = r; j < a.cols(); ++j) gens.push_back(snf.V.column(j));
  return lattice_basis(gens, a.cols());
}

std::optional<DiophantineSolution> solve_diophantine(const IntMatrix& a, const IntVector& b) {
  if (b.size() != a.rows()) throw InputError("solve_diophantine: dimension mismatch");
  const std::size_t n = a.cols();
  if (a.rows() == 0 || n == 0) {
    if (!is_zero(b)) return std::nullopt;
    auto kernel = n ? IntMatrix::identity(n) : IntMatrix(0, 0);
    return DiophantineSolution{IntVector(n, Integer(0)), kernel};
  }
  SmithDecomposition snf = smith_normal_form(a);
  IntVector ub = snf.U * b;
  std::size_t r = snf.rank();
  IntVector y(n, Integer(0));
  for (std::size_t i = 0; i < ub.size(); ++i) {
    if (i < r) {
      if (!mpz_divisible_p(ub[i].get_mpz_t(), snf.S(i, i).get_mpz_t())) return std::nullopt;
      y[i] = ub[i] / snf.S(i, i);
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  IntVector x = snf.V * y;

  std::vector<IntVector> gens;
  for (std::size_t j = r; j < n; ++j) gens.push_back(snf.V.column(j));
  std::vector<IntVector> kernel = lattice_basis(gens, n);
  // Reduce the particular solution against the echelon kernel basis.
  for (const auto& k : kernel) {
    std::size_t p = 0;
    while (k[p] == 0) ++p;
    Integer q = floor_div(x[p], k[p]);
    for (std::size_t i = 0; i < n; ++i) x[i] -= q * k[i];
  }
  IntMatrix kmat = kernel.empty() ? IntMatrix(n, 0) : IntMatrix::from_columns(kernel, n);
  return DiophantineSolution{std::move(x), std::move(kmat)};
}

std::optional<RationalVector> rational_solve(const std::vector<std::vector<Rational>>& a_in,
                                             const RationalVector& b) {
  const std::size_t m = a_in.size();
  if (b.size() != m) throw InputError("rational_solve: dimension mismatch");
  const std::size_t n = m ? a_in[0].size() : 0;
  RatMatrix a = a_in;
  RationalVector rhs = b;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < n && row < m; ++c) {
    std::size_t p = row;
    while (p < m && a[p][c] == 0) ++p;
    if (p == m) continue;
    std::swap(a[p], a[row]);
    std::swap(rhs[p], rhs[row]);
    Rational inv = 1 / a[row][c];
    for (std::size_t j = c; j < n; ++j) a[row][j] *= inv;
    rhs[row] *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[row][j];
      rhs[i] -= f * rhs[row];
    }
    pivots.push_back(c);
    ++row;
  }
  for (std::size_t i = row; i < m; ++i)
    if (rhs[i] != 0) return std::nullopt;
  RationalVector x(n, Rational(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = rhs[i];
  return x;
}

std::optional<RationalVector> rational_solve(const IntMatrix& a, const IntVector& b) {
  return rational_solve(to_rational(a), toric::to_rational(b));
}

std::vector<IntVector> rational_kernel(const IntMatrix& a_int) {
  const std::size_t m = a_int.rows();
  const std::size_t n = a_int.cols();
  RatMatrix a = to_rational(a_int);
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < n && row < m; ++c) {
    std::size_t p = row;
    while (p < m && a[p][c] == 0) ++p;
    if (p == m) continue;
    std::swap(a[p], a[row]);
    Rational inv = 1 / a[row][c];
    for (std::size_t j = c; j < n; ++j) a[row][j] *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[row][j];
    }
    pivots.push_back(c);
    ++row;
  }
  std::vector<IntVector> basis;
  std::size_t pi = 0;
  for (std::size_t free = 0; free < n; ++free) {
    if (pi < pivots.size() && pivots[pi] == free) {
      ++pi;
      continue;
    }
    RationalVector v(n, Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][free];
    basis.push_back(primitive_integer(v));
  }
  return basis;
}

IntVector primitive_integer(const RationalVector& v) {
  Integer den = common_denominator(v);
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational scaled = v[i] * den;
    out[i] = scaled.get_num();
  }
  Integer g = gcd(out);
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

std::optional<RationalVector> nonneg_rational_solve(const IntMatrix& a, const IntVector& b) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != m) throw InputError("nonneg_rational_solve: dimension mismatch");
  if (m == 0) return RationalVector(n, Rational(0));

  // Tableau columns: n originals, m artificials, then the right-hand side.
  const std::size_t width = n + m + 1;
  RatMatrix t(m, std::vector<Rational>(width, Rational(0)));
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = b[i] < 0;
    for (std::size_t j = 0; j < n; ++j) t[i][j] = flip ? Rational(-a(i, j)) : Rational(a(i, j));
    t[i][n + i] = 1;
    t[i][n + m] = flip ? Rational(-b[i]) : Rational(b[i]);
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  // Phase-one reduced costs over the original columns (artificials cost 1).
  auto reduced_cost = [&](std::size_t j) {
    Rational rc = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (basis[i] >= n) rc -= t[i][j];
    return rc;
  };

  for (;;) {
    std::size_t entering = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::find(basis.begin(), basis.end(), j) != basis.end()) continue;
      if (reduced_cost(j) < 0) {
        entering = j;
        break;
      }
    }
    if (entering == n) break;

    std::size_t leave = m;
    Rational best_ratio;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][entering] <= 0) continue;
      Rational ratio = t[i][n + m] / t[i][entering];
      if (leave == m || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == m) break;  // unbounded direction; phase one is bounded below by 0

    Rational inv = 1 / t[leave][entering];
    for (auto& x : t[leave]) x *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][entering] == 0) continue;
      Rational f = t[i][entering];
      for (std::size_t j = 0; j < width; ++j) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = entering;
  }

  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] >= n && t[i][n + m] != 0) return std::nullopt;

  RationalVector c(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) c[basis[i]] = t[i][n + m];

  // Exact post-condition; a violation means the tableau arithmetic is broken.
  for (std::size_t i = 0; i < m; ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < n; ++j) s += Rational(a(i, j)) * c[j];
    if (s != Rational(b[i])) throw ConsistencyError("nonneg_rational_solve: residual nonzero");
  }
  return c;
}

}  // namespace toric
