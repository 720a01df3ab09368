#pragma once

#include "gdrazin/linalg.hpp"

#include <cstddef>
#include <utility>

namespace gdrazin {

/// Drazin inverse of a square matrix together with its index and spectral idempotent.
template <ExactField T>
struct DrazinTriple {
  Matrix<T> ad;       ///< a^d
  std::size_t index;  ///< smallest k with rank(a^{k+1}) = rank(a^k)
  Matrix<T> api;      ///< a^pi = 1 - a a^d (relative to the unit of the algebra the triple lives in)

  friend bool operator==(const DrazinTriple &, const DrazinTriple &) = default;
};

namespace detail {

/// Index together with the rank-stabilized power a^index.
template <ExactField T>
std::pair<std::size_t, Matrix<T>> index_and_power(const Matrix<T> &a) {
  require_square(a, "index");
  Matrix<T> pk = Matrix<T>::identity(a.rows());
  std::size_t prev_rank = a.rows();
  for (std::size_t k = 0;; ++k) {
    Matrix<T> next = pk * a;
    const std::size_t r = rank(next);
    if (r == prev_rank) return {k, std::move(pk)};
    prev_rank = r;
    pk = std::move(next);
  }
}

/// Drazin inverse from a basis matrix `s` whose first `core_rank` columns span
/// range(a^k) and whose remaining columns span null(a^k). In that basis a is
/// block diagonal, diag(C, N) with C invertible and N nilpotent.
template <ExactField T>
Matrix<T> drazin_from_basis(const Matrix<T> &a, const Matrix<T> &s, std::size_t core_rank) {
  const std::size_t n = a.rows();
  if (core_rank == 0) return Matrix<T>::zero(n);
  const Matrix<T> s_inv = inverse(s);
  const Matrix<T> core = (s_inv * a * s).block(0, 0, core_rank, core_rank);
  return s.block(0, 0, n, core_rank) * inverse(core) * s_inv.block(0, 0, core_rank, n);
}

} // namespace detail

/// Smallest k >= 0 with rank(a^{k+1}) = rank(a^k); 0 iff a is invertible.
template <ExactField T>
std::size_t drazin_index(const Matrix<T> &a) {
  return detail::index_and_power(a).first;
}

/// Drazin inverse via the core-nilpotent decomposition: with k the index,
/// C^n = range(a^k) (+) null(a^k) and a acts invertibly on the first summand and
/// nilpotently on the second.
template <ExactField T>
DrazinTriple<T> drazin(const Matrix<T> &a) {
  require_square(a, "drazin");
  const std::size_t n = a.rows();
  auto [k, ak] = detail::index_and_power(a);
  if (k == 0) return {inverse(a), 0, Matrix<T>::zero(n)};

  const auto e = rref(ak);
  const Matrix<T> s = hstack(e.colspace_basis, e.kernel_basis);
  Matrix<T> ad = detail::drazin_from_basis(a, s, e.rank);
  Matrix<T> api = Matrix<T>::identity(n) - a * ad;
  return {std::move(ad), k, std::move(api)};
}

/// Axiomatic check: x a x = x, a x = x a and a - a^2 x nilpotent. By uniqueness
/// this holds iff x is the Drazin inverse of a.
template <ExactField T>
bool verify_drazin(const Matrix<T> &a, const Matrix<T> &x) {
  require_same_square(a, x, "verify_drazin");
  const Matrix<T> ax = a * x;
  if (!(ax == x * a)) return false;
  if (!(x * ax == x)) return false;
  return power(a - a * ax, a.rows()).is_zero();
}

template <ExactField T>
Matrix<T> spectral_idempotent(const Matrix<T> &a) {
  return drazin(a).api;
}

} // namespace gdrazin
