#pragma once

#include "gdrazin/matrix.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace gdrazin {

template <ExactField T>
struct RowEchelon {
  Matrix<T> reduced;                    ///< reduced row-echelon form
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;  ///< increasing
  Matrix<T> kernel_basis;               ///< cols x (cols - rank); columns span null(A)
  Matrix<T> colspace_basis;             ///< rows x rank; the pivot columns of A
};

/// Gauss-Jordan elimination over the field. The pivot in each column is the first
/// nonzero entry at or below the current row, so the output is deterministic.
template <ExactField T>
RowEchelon<T> rref(const Matrix<T> &a) {
  const T zero{};
  Matrix<T> r = a;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < r.cols() && row < r.rows(); ++col) {
    std::size_t piv = row;
    while (piv < r.rows() && r(piv, col) == zero) ++piv;
    if (piv == r.rows()) continue;
    if (piv != row)
      for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r(piv, j), r(row, j));

    const T inv = T(T{1} / r(row, col));
    for (std::size_t j = col; j < r.cols(); ++j) r(row, j) = T(r(row, j) * inv);
    for (std::size_t i = 0; i < r.rows(); ++i) {
      if (i == row || r(i, col) == zero) continue;
      const T f = r(i, col);
      for (std::size_t j = col; j < r.cols(); ++j) r(i, j) = T(r(i, j) - T(f * r(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }

  RowEchelon<T> out;
  out.rank = pivots.size();
  out.colspace_basis = Matrix<T>(a.rows(), out.rank);
  for (std::size_t k = 0; k < out.rank; ++k)
    for (std::size_t i = 0; i < a.rows(); ++i) out.colspace_basis(i, k) = a(i, pivots[k]);

  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  out.kernel_basis = Matrix<T>(a.cols(), a.cols() - out.rank);
  std::size_t k = 0;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    out.kernel_basis(f, k) = T{1};
    for (std::size_t i = 0; i < out.rank; ++i) out.kernel_basis(pivots[i], k) = T(-r(i, f));
    ++k;
  }

  out.reduced = std::move(r);
  out.pivot_cols = std::move(pivots);
  return out;
}

template <ExactField T>
std::size_t rank(const Matrix<T> &a) {
  return rref(a).rank;
}

/// A = C * F with C the pivot columns of A (full column rank) and F the nonzero
/// rows of rref(A) (full row rank).
template <ExactField T>
std::pair<Matrix<T>, Matrix<T>> full_rank_factorization(const Matrix<T> &a) {
  auto e = rref(a);
  return {std::move(e.colspace_basis), e.reduced.block(0, 0, e.rank, a.cols())};
}

template <ExactField T>
Matrix<T> inverse(const Matrix<T> &a) {
  require_square(a, "inverse");
  const std::size_t n = a.rows();
  auto e = rref(hstack(a, Matrix<T>::identity(n)));
  if (e.pivot_cols.size() < n || (n > 0 && e.pivot_cols[n - 1] != n - 1)) throw SingularMatrixError();
  return e.reduced.block(0, n, n, n);
}

template <ExactField T>
Matrix<T> power(const Matrix<T> &a, std::size_t k) {
  require_square(a, "power");
  Matrix<T> result = Matrix<T>::identity(a.rows());
  Matrix<T> base = a;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

template <ExactField T>
bool is_nilpotent(const Matrix<T> &a) {
  require_square(a, "is_nilpotent");
  return power(a, a.rows()).is_zero();
}

template <ExactField T>
bool is_idempotent(const Matrix<T> &p) {
  return p.is_square() && p * p == p;
}

} // namespace gdrazin
