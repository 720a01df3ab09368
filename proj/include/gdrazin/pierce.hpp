#pragma once

#include "gdrazin/drazin.hpp"
#include "gdrazin/series.hpp"

#include <cstddef>
#include <utility>

namespace gdrazin {

/// The four corner components of `a` relative to an idempotent `p`, stored full size.
template <ExactField T>
struct PierceBlocks {
  Matrix<T> p;
  Matrix<T> a11; ///< p a p
  Matrix<T> a12; ///< p a (1-p)
  Matrix<T> a21; ///< (1-p) a p
  Matrix<T> a22; ///< (1-p) a (1-p)

  [[nodiscard]] Matrix<T> recompose() const { return a11 + a12 + a21 + a22; }
};

template <ExactField T>
PierceBlocks<T> decompose(const Matrix<T> &a, const Matrix<T> &p) {
  require_same_square(a, p, "decompose");
  if (!is_idempotent(p)) throw NotIdempotentError();
  const Matrix<T> q = Matrix<T>::identity(p.rows()) - p;
  const Matrix<T> pa = p * a;
  const Matrix<T> qa = q * a;
  return {p, pa * p, pa * q, qa * p, qa * q};
}

/// x = l x r, i.e. x lives in the corner l A r.
template <ExactField T>
bool in_corner(const Matrix<T> &x, const Matrix<T> &left, const Matrix<T> &right) {
  return left * x * right == x;
}

/// Exact coordinates for the corner algebra pAp: p = basis * coords with
/// coords * basis = I_r, so y |-> coords * y * basis is an algebra isomorphism
/// from pAp onto the r x r matrices sending p to I_r.
template <ExactField T>
struct CornerCoordinates {
  Matrix<T> basis;  ///< n x r, columns span range(p)
  Matrix<T> coords; ///< r x n

  [[nodiscard]] std::size_t rank() const { return basis.cols(); }
  [[nodiscard]] Matrix<T> compress(const Matrix<T> &x) const { return coords * x * basis; }
  [[nodiscard]] Matrix<T> lift(const Matrix<T> &y) const { return basis * y * coords; }
};

template <ExactField T>
CornerCoordinates<T> corner_coordinates(const Matrix<T> &p) {
  require_square(p, "corner_coordinates");
  if (!is_idempotent(p)) throw NotIdempotentError();
  auto [c, f] = full_rank_factorization(p);
  return {std::move(c), std::move(f)};
}

namespace detail {

template <ExactField T>
DrazinTriple<T> corner_drazin_with(const Matrix<T> &x, const Matrix<T> &p, const CornerCoordinates<T> &cc) {
  const std::size_t n = p.rows();
  if (cc.rank() == 0) return {Matrix<T>::zero(n), 0, Matrix<T>::zero(n)};
  const auto inner = drazin(cc.compress(x));
  Matrix<T> y = cc.lift(inner.ad);
  Matrix<T> pi = p - x * y;
  return {std::move(y), inner.index, std::move(pi)};
}

template <ExactField T>
void require_corner(const Matrix<T> &x, const Matrix<T> &p) {
  require_same_square(x, p, "corner operation");
  if (!in_corner(x, p, p)) throw CornerMembershipError();
}

} // namespace detail

/// Drazin inverse of x inside the corner algebra pAp, whose unit is p. The
/// returned `api` is the corner spectral idempotent p - x x^d and `index` is the
/// index of x in pAp.
template <ExactField T>
DrazinTriple<T> corner_drazin(const Matrix<T> &x, const Matrix<T> &p) {
  const auto cc = corner_coordinates(p);
  detail::require_corner(x, p);
  return detail::corner_drazin_with(x, p, cc);
}

template <ExactField T>
std::size_t corner_index(const Matrix<T> &x, const Matrix<T> &p) {
  const auto cc = corner_coordinates(p);
  detail::require_corner(x, p);
  return cc.rank() == 0 ? 0 : drazin_index(cc.compress(x));
}

namespace detail {

/// Drazin inverse of x = [a 0; c b] relative to p from corner Drazin data of the
/// diagonal blocks:
///
///   x^d = [a^d 0; u b^d],
///   u   = sum_n (b^d)^{n+2} c a^n a^pi + sum_n b^pi b^n c (a^d)^{n+2} - b^d c a^d.
///
/// a^n a^pi = (a a^pi)^n a^pi vanishes once n reaches the corner index of a, and
/// b^pi b^n likewise for b, so both sums are finite.
template <ExactField T>
Matrix<T> triangular_drazin(const DrazinTriple<T> &top, const DrazinTriple<T> &bottom, const Matrix<T> &a_blk,
                            const Matrix<T> &b_blk, const Matrix<T> &c_blk, SeriesOptions opts,
                            TruncationOrders *orders = nullptr, const std::string &label = "u") {
  const std::size_t terms_a = top.index + opts.extra_terms;
  const std::size_t terms_b = bottom.index + opts.extra_terms;

  Matrix<T> u = -(bottom.ad * c_blk * top.ad);

  // sum_n (b^d)^{n+2} c a^n a^pi
  Matrix<T> bd_pow = bottom.ad * bottom.ad;
  Matrix<T> a_tail = top.api;
  for (std::size_t k = 0; k < terms_a; ++k) {
    u += bd_pow * c_blk * a_tail;
    bd_pow = bd_pow * bottom.ad;
    a_tail = a_blk * a_tail;
  }

  // sum_n b^pi b^n c (a^d)^{n+2}
  Matrix<T> b_head = bottom.api;
  Matrix<T> ad_pow = top.ad * top.ad;
  for (std::size_t k = 0; k < terms_b; ++k) {
    u += b_head * c_blk * ad_pow;
    b_head = b_head * b_blk;
    ad_pow = ad_pow * top.ad;
  }

  if (orders) {
    (*orders)[label + ".first"] = terms_a;
    (*orders)[label + ".second"] = terms_b;
  }
  return top.ad + bottom.ad + u;
}

} // namespace detail

/// Drazin inverse of the lower triangular element x = a_blk + c_blk + b_blk with
/// a_blk in pAp, b_blk in (1-p)A(1-p) and c_blk in (1-p)Ap.
template <ExactField T>
Matrix<T> lemma11_triangular_drazin(const Matrix<T> &a_blk, const Matrix<T> &b_blk, const Matrix<T> &c_blk,
                                    const Matrix<T> &p, SeriesOptions opts = {},
                                    TruncationOrders *orders = nullptr) {
  require_same_square(a_blk, p, "lemma11_triangular_drazin");
  require_same_square(b_blk, p, "lemma11_triangular_drazin");
  require_same_square(c_blk, p, "lemma11_triangular_drazin");
  if (!is_idempotent(p)) throw NotIdempotentError();
  const Matrix<T> q = Matrix<T>::identity(p.rows()) - p;
  if (!in_corner(a_blk, p, p)) throw CornerMembershipError("a_blk is not in pAp");
  if (!in_corner(b_blk, q, q)) throw CornerMembershipError("b_blk is not in (1-p)A(1-p)");
  if (!in_corner(c_blk, q, p)) throw CornerMembershipError("c_blk is not in (1-p)Ap");

  const auto top = corner_drazin(a_blk, p);
  const auto bottom = corner_drazin(b_blk, q);
  return detail::triangular_drazin(top, bottom, a_blk, b_blk, c_blk, opts, orders);
}

} // namespace gdrazin
