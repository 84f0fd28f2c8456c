#pragma once

#include "wph/matrix.hpp"

#include <optional>
#include <vector>

namespace wph {

// U * A = H with H in row echelon form and U invertible (unimodular over Z).
// Over Z, H is the Hermite normal form: positive pivots, entries above each
// pivot reduced into [0, pivot). Over Q, H is the reduced row echelon form.
template <Scalar T>
struct EchelonForm {
  Matrix<T> H;
  Matrix<T> U;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row of H
  std::size_t rank() const { return pivots.size(); }
};

template <Scalar T>
struct SmithDecomposition {
  Matrix<T> S;
  Matrix<T> U;
  Matrix<T> V;
  std::size_t rank = 0;

  std::vector<T> diagonal() const {
    std::vector<T> d;
    for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
    return d;
  }
};

namespace detail {

template <Scalar T>
void reduce_pivot_column(Matrix<T>& a, Matrix<T>* u, std::size_t row, std::size_t col) {
  // Clears every entry below a(row, col) using unimodular row operations.
  if constexpr (is_field_v<T>) {
    for (std::size_t i = row + 1; i < a.rows(); ++i) {
      if (a(i, col) == 0) continue;
      T k = -a(i, col) / a(row, col);
      a.add_row_multiple(i, row, k, col);
      if (u) u->add_row_multiple(i, row, k);
    }
  } else {
    // Euclid on the whole column: reduce every row by the entry of least
    // absolute value with rounded quotients until one nonzero entry remains.
    for (;;) {
      std::size_t best = a.rows();
      for (std::size_t i = row; i < a.rows(); ++i) {
        if (a(i, col) == 0) continue;
        if (best == a.rows() || abs_value(a(i, col)) < abs_value(a(best, col))) best = i;
      }
      if (best != row) {
        a.swap_rows(row, best);
        if (u) u->swap_rows(row, best);
      }
      bool done = true;
      const Integer x = a(row, col);
      const Integer size = abs_value(x);
      for (std::size_t i = row + 1; i < a.rows(); ++i) {
        if (a(i, col) == 0) continue;
        Integer twice = 2 * a(i, col);
        if (twice >= 0) twice += size;
        else twice -= size;
        Integer k = -(twice / (2 * x));
        if (k != 0) {
          a.add_row_multiple(i, row, k, col);
          if (u) u->add_row_multiple(i, row, k);
        }
        if (a(i, col) != 0) done = false;
      }
      if (done) return;
    }
  }
}

}  // namespace detail

template <Scalar T>
EchelonForm<T> echelon_form(Matrix<T> a, bool with_transform = true) {
  const std::size_t m = a.rows(), n = a.cols();
  EchelonForm<T> out;
  Matrix<T> u = with_transform ? Matrix<T>::identity(m) : Matrix<T>();
  Matrix<T>* up = with_transform ? &u : nullptr;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    // Choose the nonzero entry of least absolute value as pivot.
    std::size_t best = m;
    for (std::size_t i = row; i < m; ++i) {
      if (a(i, col) == 0) continue;
      if (best == m || abs_value(a(i, col)) < abs_value(a(best, col))) best = i;
    }
    if (best == m) continue;
    a.swap_rows(row, best);
    if (up) up->swap_rows(row, best);
    detail::reduce_pivot_column(a, up, row, col);
    if constexpr (is_field_v<T>) {
      T inv = T(1) / a(row, col);
      a.scale_row(row, inv);
      if (up) up->scale_row(row, inv);
      for (std::size_t i = 0; i < row; ++i) {
        if (a(i, col) == 0) continue;
        T k = -a(i, col);
        a.add_row_multiple(i, row, k, col);
        if (up) up->add_row_multiple(i, row, k);
      }
    } else {
      if (a(row, col) < 0) {
        a.negate_row(row);
        if (up) up->negate_row(row);
      }
      const Integer& pivot = a(row, col);
      for (std::size_t i = 0; i < row; ++i) {
        if (a(i, col) == 0) continue;
        Integer k = -floor_div(a(i, col), pivot);
        a.add_row_multiple(i, row, k, col);
        if (up) up->add_row_multiple(i, row, k);
      }
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.H = std::move(a);
  out.U = std::move(u);
  return out;
}

inline EchelonForm<Integer> hermite_normal_form(const IntMatrix& a) { return echelon_form(a); }

template <Scalar T>
std::size_t rank(const Matrix<T>& a) {
  return echelon_form(a, false).rank();
}

namespace detail {

// Diagonalises a in place; returns the rank. Pivot: nonzero entry of least
// absolute value, ties by lowest row then column. Transforms are optional.
template <Scalar T>
std::size_t smith_reduce(Matrix<T>& a, Matrix<T>* u, Matrix<T>* v) {
  const std::size_t m = a.rows(), n = a.cols();
  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    for (;;) {
      std::size_t pr = m, pc = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (a(i, j) == 0) continue;
          if (pr == m || abs_value(a(i, j)) < abs_value(a(pr, pc))) {
            pr = i;
            pc = j;
          }
        }
      if (pr == m) return t;
      a.swap_rows(t, pr);
      if (u) u->swap_rows(t, pr);
      a.swap_columns(t, pc);
      if (v) v->swap_columns(t, pc);

      const T pivot = a(t, t);
      const bool unit = pivot == 1 || pivot == -1;
      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a(i, t) == 0) continue;
        T q = unit ? T(a(i, t) * pivot) : T(a(i, t) / pivot);
        a.add_row_multiple(i, t, -q, t);
        if (u) u->add_row_multiple(i, t, -q);
        if (a(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a(t, j) == 0) continue;
        T q = unit ? T(a(t, j) * pivot) : T(a(t, j) / pivot);
        a.add_column_multiple(j, t, -q);
        if (v) v->add_column_multiple(j, t, -q);
        if (a(t, j) != 0) dirty = true;
      }
      if (dirty) continue;
      if constexpr (!is_field_v<T>) {
        if (!unit) {
          // Divisibility: fold an offending row into the pivot row and retry.
          std::size_t bad = m;
          for (std::size_t i = t + 1; i < m && bad == m; ++i)
            for (std::size_t j = t + 1; j < n; ++j)
              if (a(i, j) % pivot != 0) {
                bad = i;
                break;
              }
          if (bad != m) {
            a.add_row_multiple(t, bad, T(1));
            if (u) u->add_row_multiple(t, bad, T(1));
            continue;
          }
        }
      }
      break;
    }
    if constexpr (is_field_v<T>) {
      T inv = T(1) / a(t, t);
      a.scale_row(t, inv);
      if (u) u->scale_row(t, inv);
    } else if (a(t, t) < 0) {
      a.negate_row(t);
      if (u) u->negate_row(t);
    }
  }
  return t;
}

}  // namespace detail

// U * A * V = S, S diagonal with d1 | d2 | ... and nonnegative entries.
// With with_v = false the column transform is not accumulated (V is empty).
template <Scalar T>
SmithDecomposition<T> smith_normal_form(const Matrix<T>& input, bool with_v = true) {
  SmithDecomposition<T> out;
  out.S = input;
  out.U = Matrix<T>::identity(input.rows());
  if (with_v) out.V = Matrix<T>::identity(input.cols());
  out.rank = detail::smith_reduce(out.S, &out.U, with_v ? &out.V : nullptr);
  return out;
}

// The nonzero diagonal entries of the Smith form, without transforms.
template <Scalar T>
std::vector<T> invariant_factors(Matrix<T> a) {
  const std::size_t r = detail::smith_reduce(a, static_cast<Matrix<T>*>(nullptr), static_cast<Matrix<T>*>(nullptr));
  std::vector<T> out;
  for (std::size_t i = 0; i < r; ++i) out.push_back(a(i, i));
  return out;
}

// Inverse of a square invertible matrix (unimodular over Z).
template <Scalar T>
Matrix<T> inverse(const Matrix<T>& a) {
  assert(a.rows() == a.cols());
  auto ef = echelon_form(a);
  if (ef.rank() != a.rows()) throw Error("matrix is singular");
  if constexpr (!is_field_v<T>) {
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (ef.H(i, i) != 1) throw Error("matrix is not unimodular");
  }
  return ef.U;  // U * A = I
}

namespace detail {

// Rows of U (unimodular) with U * A having zero rows exactly at the returned
// indices. Pivots are chosen globally by least absolute value, which keeps
// the transform small on boundary-like matrices.
template <Scalar T>
Matrix<T> left_null_rows(Matrix<T> a) {
  const std::size_t m = a.rows(), n = a.cols();
  Matrix<T> u = Matrix<T>::identity(m);
  std::vector<char> used(n, 0);
  std::size_t t = 0;
  while (t < m) {
    std::size_t pr = m, pc = n;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (used[j] || a(i, j) == 0) continue;
        if (pr == m || abs_value(a(i, j)) < abs_value(a(pr, pc))) {
          pr = i;
          pc = j;
          if (abs_value(a(pr, pc)) == 1) goto found;
        }
      }
  found:
    if (pr == m) break;
    a.swap_rows(t, pr);
    u.swap_rows(t, pr);
    bool dirty = false;
    for (std::size_t i = t + 1; i < m; ++i) {
      if (a(i, pc) == 0) continue;
      T q = a(i, pc) / a(t, pc);
      a.add_row_multiple(i, t, -q);
      u.add_row_multiple(i, t, -q);
      if (a(i, pc) != 0) dirty = true;
    }
    if (dirty) continue;  // a smaller remainder now exists in this column
    used[pc] = 1;
    ++t;
  }
  std::vector<std::size_t> rows;
  for (std::size_t i = t; i < m; ++i) rows.push_back(i);
  return u.select_rows(rows);
}

}  // namespace detail

// Columns form a basis of the right kernel. Over Z the lattice they span is
// the full integral kernel. Output is canonical: its transpose is in Hermite
// (or reduced row echelon) form.
template <Scalar T>
Matrix<T> kernel_basis(const Matrix<T>& a) {
  const std::size_t n = a.cols();
  auto null_rows = detail::left_null_rows(a.transpose());
  if (null_rows.rows() == 0) return Matrix<T>(n, 0);
  auto canon = echelon_form(std::move(null_rows), false);
  Matrix<T> k(n, canon.rank());
  for (std::size_t c = 0; c < canon.rank(); ++c)
    for (std::size_t i = 0; i < n; ++i) k(i, c) = canon.H(c, i);
  return k;
}

// Canonical basis (as columns) of the span of the given columns, in Hermite or
// reduced echelon form. Over Z this is the lattice spanned, not its saturation.
template <Scalar T>
Matrix<T> span_basis(const Matrix<T>& generators) {
  auto ef = echelon_form(generators.transpose(), false);
  Matrix<T> b(generators.rows(), ef.rank());
  for (std::size_t c = 0; c < ef.rank(); ++c)
    for (std::size_t i = 0; i < generators.rows(); ++i) b(i, c) = ef.H(c, i);
  return b;
}

// Solves basis * x = target for linearly independent basis columns.
template <Scalar T>
class SpanSolver {
 public:
  explicit SpanSolver(const Matrix<T>& basis) : dim_(basis.rows()), size_(basis.cols()) {
    auto ef = echelon_form(basis.transpose());
    if (ef.rank() != size_) throw Error("SpanSolver: basis columns are dependent");
    echelon_ = std::move(ef.H);
    transform_ = std::move(ef.U);
    pivots_ = std::move(ef.pivots);
  }

  // Trusts that the columns are already in echelon form (the transpose of a
  // Hermite or reduced echelon matrix), skipping the factorization.
  static SpanSolver from_echelon(const Matrix<T>& basis) {
    SpanSolver s;
    s.dim_ = basis.rows();
    s.size_ = basis.cols();
    s.echelon_ = basis.transpose();
    s.transform_ = Matrix<T>::identity(s.size_);
    for (std::size_t i = 0; i < s.size_; ++i) {
      std::size_t p = 0;
      while (p < s.dim_ && s.echelon_(i, p) == 0) ++p;
      if (p == s.dim_ || (i > 0 && p <= s.pivots_.back())) throw Error("SpanSolver: basis is not in echelon form");
      s.pivots_.push_back(p);
    }
    return s;
  }

  std::size_t ambient_dim() const { return dim_; }
  std::size_t size() const { return size_; }

  std::optional<std::vector<T>> solve(std::vector<T> residual) const {
    assert(residual.size() == dim_);
    std::vector<T> y(size_);
    for (std::size_t i = 0; i < size_; ++i) {
      const std::size_t p = pivots_[i];
      if (residual[p] == 0) continue;
      const T& h = echelon_(i, p);
      T c;
      if (h == 1) {
        c = residual[p];
      } else {
        if constexpr (!is_field_v<T>) {
          if (residual[p] % h != 0) return std::nullopt;
        }
        c = residual[p] / h;
      }
      for (std::size_t j = p; j < dim_; ++j)
        if (echelon_(i, j) != 0) residual[j] -= c * echelon_(i, j);
      y[i] = std::move(c);
    }
    for (const T& r : residual)
      if (r != 0) return std::nullopt;
    // target^T = y * H = y * U * basis^T, so x = U^T y.
    std::vector<T> x(size_);
    for (std::size_t i = 0; i < size_; ++i) {
      if (y[i] == 0) continue;
      for (std::size_t j = 0; j < size_; ++j)
        if (transform_(i, j) != 0) x[j] += y[i] * transform_(i, j);
    }
    return x;
  }

  // Solves for every column of targets; nullopt if any column is outside the span.
  std::optional<Matrix<T>> solve_columns(const Matrix<T>& targets) const {
    Matrix<T> out(size_, targets.cols());
    for (std::size_t j = 0; j < targets.cols(); ++j) {
      auto x = solve(targets.column(j));
      if (!x) return std::nullopt;
      for (std::size_t i = 0; i < size_; ++i) out(i, j) = (*x)[i];
    }
    return out;
  }

 private:
  SpanSolver() = default;
  std::size_t dim_ = 0;
  std::size_t size_ = 0;
  Matrix<T> echelon_;
  Matrix<T> transform_;
  std::vector<std::size_t> pivots_;
};

template <Scalar T>
std::optional<std::vector<T>> solve_in_span(const Matrix<T>& basis, const std::vector<T>& target) {
  return SpanSolver<T>(basis).solve(target);
}

}  // namespace wph
