#pragma once

#include "gdrazin/conditions.hpp"
#include "gdrazin/pierce.hpp"
#include "gdrazin/series.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gdrazin {

/// Value of an additive formula plus the number of terms used in each series.
template <ExactField T>
struct Evaluation {
  Matrix<T> value;
  TruncationOrders orders;
};

namespace detail {

template <ExactField T>
void require(const PairSpectra<T> &s, ConditionId id) {
  if (!check_condition(s, id)) throw HypothesisViolation(std::string(to_string(id)) + " condition does not hold");
}

/// sum_{n < terms} (b^d)^{n+1} (sign a)^n a^pi
template <ExactField T>
Matrix<T> bd_series(const PairSpectra<T> &s, const T &sign, std::size_t terms) {
  Matrix<T> acc = Matrix<T>::zero(s.n());
  Matrix<T> bd_pow = s.bd;
  Matrix<T> a_tail = s.api;
  const Matrix<T> sa = sign * s.a;
  for (std::size_t k = 0; k < terms; ++k) {
    acc += bd_pow * a_tail;
    bd_pow = bd_pow * s.bd;
    a_tail = sa * a_tail;
  }
  return acc;
}

/// sum_{n < terms} d^pi d^n a^pi b (c^d)^{n+2} for d = a^pi (a+b) a^pi.
///
/// This is the trailing pair of series of the additive formulas regrouped into a
/// single sum over the corner (1-p)A(1-p): there b^pi - sum_k (b^d)^{k+1} a^{k+1}
/// (and its signed analogue) is exactly the corner spectral idempotent of d, and
/// d^pi d^n = 0 once n reaches the corner index of d. Taken separately the two
/// series do not terminate.
template <ExactField T>
Matrix<T> corner_tail(const PairSpectra<T> &s, const Matrix<T> &dd, const Matrix<T> &cd, SeriesOptions opts,
                      TruncationOrders &orders) {
  const Matrix<T> &q = s.api;
  const Matrix<T> d = q * (s.a + s.b) * q;
  const Matrix<T> dpi = q - d * dd;
  const std::size_t terms = corner_index(d, q) + opts.extra_terms;
  orders["tail"] = terms;

  const Matrix<T> qb = q * s.b;
  Matrix<T> acc = Matrix<T>::zero(s.n());
  Matrix<T> head = dpi;
  Matrix<T> cd_pow = cd * cd;
  for (std::size_t k = 0; k < terms; ++k) {
    acc += head * qb * cd_pow;
    head = head * d;
    cd_pow = cd_pow * cd;
  }
  return acc;
}

/// The right-hand side of the first main formula for a given c^d:
///   c^d + X1 - X2 + X3 + (X4 - X5)
template <ExactField T>
Evaluation<T> assemble_thm21(const PairSpectra<T> &s, const Matrix<T> &c, const Matrix<T> &cd, std::size_t ind_c,
                             SeriesOptions opts) {
  Evaluation<T> ev;
  const std::size_t ta = s.ind_a + opts.extra_terms;
  const std::size_t tc = ind_c + opts.extra_terms;
  const Matrix<T> cpi = s.p - c * cd;

  const Matrix<T> x1 = bd_series(s, T{1}, ta);
  ev.orders["X1"] = ta;
  const Matrix<T> x2 = x1 * s.b * cd;

  // X3 = sum_n sum_k (b^d)^{n+k+2} a^k a^pi b a a^d c^n c^pi
  std::vector<Matrix<T>> bd_pows{Matrix<T>::identity(s.n())};
  for (std::size_t k = 0; k < ta + tc + 2; ++k) bd_pows.push_back(bd_pows.back() * s.bd);
  std::vector<Matrix<T>> a_tails{s.api};
  for (std::size_t k = 1; k < ta; ++k) a_tails.push_back(s.a * a_tails.back());
  const Matrix<T> bap = s.b * s.p;
  Matrix<T> x3 = Matrix<T>::zero(s.n());
  Matrix<T> c_tail = cpi;
  for (std::size_t n = 0; n < tc; ++n) {
    const Matrix<T> right = bap * c_tail;
    for (std::size_t k = 0; k < ta; ++k) x3 += bd_pows[n + k + 2] * a_tails[k] * right;
    c_tail = c * c_tail;
  }
  ev.orders["X3.n"] = tc;
  ev.orders["X3.k"] = ta;

  const Matrix<T> x45 = corner_tail(s, x1, cd, opts, ev.orders);
  ev.value = cd + x1 - x2 + x3 + x45;
  return ev;
}

/// (a+b)^d assembled in block form relative to p = a a^d as
/// [c^d 0; u (a2+b4)^d], with (a2+b4)^d = sum_n (b4^d)^{n+1} (-a2)^n.
template <ExactField T>
Evaluation<T> assemble_thm23(const PairSpectra<T> &s, const Matrix<T> &c, const Matrix<T> &cd, std::size_t ind_c,
                             SeriesOptions opts) {
  Evaluation<T> ev;
  const Matrix<T> &p = s.p;
  const Matrix<T> &q = s.api;
  const Matrix<T> a2 = q * s.a * q;
  const Matrix<T> b4 = q * s.b * q;
  const Matrix<T> b3 = q * s.b * p;
  const Matrix<T> b4d = corner_drazin(b4, q).ad;

  const std::size_t ta = s.ind_a + opts.extra_terms;
  Matrix<T> dd = Matrix<T>::zero(s.n());
  Matrix<T> b4d_pow = b4d;
  Matrix<T> neg_a2_pow = Matrix<T>::identity(s.n());
  for (std::size_t k = 0; k < ta; ++k) {
    dd += b4d_pow * neg_a2_pow;
    b4d_pow = b4d_pow * b4d;
    neg_a2_pow = neg_a2_pow * (-a2);
  }
  ev.orders["d^d"] = ta;

  const Matrix<T> d = a2 + b4;
  const DrazinTriple<T> top{cd, ind_c, p - c * cd};
  const DrazinTriple<T> bottom{dd, corner_index(d, q), q - d * dd};
  ev.value = triangular_drazin(top, bottom, c, d, b3, opts, &ev.orders, "u");
  return ev;
}

/// c^d = a^d (1 + a^d b)^d b b^d + a a^d b^pi sum_n (-b)^n (a^d)^{n+1}.
/// Valid whenever p b (1-p) = 0 and a^2 a^d b = a a^d b a.
template <ExactField T>
Matrix<T> eq6(const PairSpectra<T> &s, SeriesOptions opts, TruncationOrders &orders) {
  const std::size_t n = s.n();
  const Matrix<T> g = drazin(Matrix<T>::identity(n) + s.ad * s.b).ad;
  Matrix<T> first = s.ad * g * s.b * s.bd;

  const std::size_t tb = s.ind_b + opts.extra_terms;
  orders["c^d"] = tb;
  Matrix<T> acc = Matrix<T>::zero(n);
  Matrix<T> neg_b_pow = Matrix<T>::identity(n);
  Matrix<T> ad_pow = s.ad;
  for (std::size_t k = 0; k < tb; ++k) {
    acc += neg_b_pow * ad_pow;
    neg_b_pow = neg_b_pow * (-s.b);
    ad_pow = ad_pow * s.ad;
  }
  return first + s.p * s.bpi * acc;
}

template <ExactField T>
Matrix<T> core_part(const PairSpectra<T> &s) {
  return s.p * (s.a + s.b);
}

} // namespace detail

/// (a+b)^d = sum_n (b^d)^{n+1} a^n for nilpotent a with a b = b^pi b a b^pi.
template <ExactField T>
Evaluation<T> sum_lemma12(const Matrix<T> &a, const Matrix<T> &b, SeriesOptions opts = {}) {
  const PairSpectra<T> s(a, b);
  if (!s.a_nilpotent()) throw HypothesisViolation("LEM12 requires a nilpotent");
  detail::require(s, ConditionId::LEM12);
  Evaluation<T> ev;
  const std::size_t terms = s.ind_a + opts.extra_terms;
  ev.orders["series"] = terms;
  ev.value = Matrix<T>::zero(s.n());
  Matrix<T> bd_pow = s.bd;
  Matrix<T> a_pow = Matrix<T>::identity(s.n());
  for (std::size_t k = 0; k < terms; ++k) {
    ev.value += bd_pow * a_pow;
    bd_pow = bd_pow * s.bd;
    a_pow = a_pow * a;
  }
  return ev;
}

/// Commuting pair:
///   (a+b)^d = a^d (1 + a^d b)^d b b^d + b^pi sum_n (-b)^n (a^d)^{n+1}
///             + sum_n (b^d)^{n+1} (-a)^n a^pi.
template <ExactField T>
Evaluation<T> sum_lemma13(const Matrix<T> &a, const Matrix<T> &b, SeriesOptions opts = {}) {
  const PairSpectra<T> s(a, b);
  detail::require(s, ConditionId::LEM13);
  const std::size_t n = s.n();
  Evaluation<T> ev;
  const Matrix<T> g = drazin(Matrix<T>::identity(n) + s.ad * b).ad;
  ev.value = s.ad * g * b * s.bd;

  const std::size_t tb = s.ind_b + opts.extra_terms;
  Matrix<T> acc = Matrix<T>::zero(n);
  Matrix<T> neg_b_pow = Matrix<T>::identity(n);
  Matrix<T> ad_pow = s.ad;
  for (std::size_t k = 0; k < tb; ++k) {
    acc += neg_b_pow * ad_pow;
    neg_b_pow = neg_b_pow * (-b);
    ad_pow = ad_pow * s.ad;
  }
  ev.value += s.bpi * acc;
  ev.orders["second"] = tb;

  const std::size_t ta = s.ind_a + opts.extra_terms;
  ev.value += detail::bd_series(s, T{-1}, ta);
  ev.orders["third"] = ta;
  return ev;
}

/// First main formula, c = a a^d (a+b) with c^d taken in the corner algebra
/// a a^d A a a^d.
template <ExactField T>
Evaluation<T> sum_thm21(const Matrix<T> &a, const Matrix<T> &b, SeriesOptions opts = {}) {
  const PairSpectra<T> s(a, b);
  detail::require(s, ConditionId::THM21);
  const Matrix<T> c = detail::core_part(s);
  const auto cdt = corner_drazin(c, s.p);
  return detail::assemble_thm21(s, c, cdt.ad, cdt.index, opts);
}

/// c^d for c = a a^d (a+b) from a, b, a^d and b^d alone, for pairs satisfying
/// THM22 or COR25.
template <ExactField T>
Matrix<T> cd_eq6(const Matrix<T> &a, const Matrix<T> &b, SeriesOptions opts = {},
                 TruncationOrders *orders = nullptr) {
  const PairSpectra<T> s(a, b);
  if (!check_condition(s, ConditionId::THM22) && !check_condition(s, ConditionId::COR25))
    throw HypothesisViolation("neither THM22 nor COR25 condition holds");
  TruncationOrders local;
  return detail::eq6(s, opts, orders ? *orders : local);
}

/// First main formula with c^d given explicitly in terms of a, b, a^d, b^d.
template <ExactField T>
Evaluation<T> sum_thm22(const Matrix<T> &a, const Matrix<T> &b, SeriesOptions opts = {}) {
  const PairSpectra<T> s(a, b);
  detail::require(s, ConditionId::THM22);
  const Matrix<T> c = detail::core_part(s);
  TruncationOrders eq6_orders;
  const Matrix<T> cd = detail::eq6(s, opts, eq6_orders);
  auto ev = detail::assemble_thm21(s, c, cd, corner_index(c, s.p), opts);
  ev.orders.merge(eq6_orders);
  return ev;
}

/// Second main formula, under a b a^pi = a^pi b a a^pi.
template <ExactField T>
Evaluation<T> sum_thm23(const Matrix<T> &a, const Matrix<T> &b, SeriesOptions opts = {}) {
  const PairSpectra<T> s(a, b);
  detail::require(s, ConditionId::THM23);
  const Matrix<T> c = detail::core_part(s);
  const auto cdt = corner_drazin(c, s.p);
  return detail::assemble_thm23(s, c, cdt.ad, cdt.index, opts);
}

/// a^d a b = 0 specialisation of the first formula; here c = a^2 a^d and c^d = a^d.
///   a^d + sum_n (b^d)^{n+1} a^n a^pi + [tail] - sum_{n>=0} (b^d)^{n+1} a^n b a^d
template <ExactField T>
Evaluation<T> sum_cor21(const Matrix<T> &a, const Matrix<T> &b, SeriesOptions opts = {}) {
  const PairSpectra<T> s(a, b);
  detail::require(s, ConditionId::COR21);
  Evaluation<T> ev;
  const std::size_t ta = s.ind_a + opts.extra_terms;
  const Matrix<T> x1 = detail::bd_series(s, T{1}, ta);
  ev.orders["X1"] = ta;
  const Matrix<T> tail = detail::corner_tail(s, x1, s.ad, opts, ev.orders);

  // a^n b = a^n a^pi b vanishes for n >= ind(a).
  Matrix<T> last = Matrix<T>::zero(s.n());
  Matrix<T> bd_pow = s.bd;
  Matrix<T> a_pow = Matrix<T>::identity(s.n());
  for (std::size_t k = 0; k < ta; ++k) {
    last += bd_pow * a_pow * b * s.ad;
    bd_pow = bd_pow * s.bd;
    a_pow = a_pow * a;
  }
  ev.orders["last"] = ta;
  ev.value = s.ad + x1 + tail - last;
  return ev;
}

/// (a+b)^d = sum_n (b^d)^{n+1} (-a)^n for nilpotent a commuting with b.
template <ExactField T>
Evaluation<T> sum_cor22(const Matrix<T> &a, const Matrix<T> &b, SeriesOptions opts = {}) {
  const PairSpectra<T> s(a, b);
  detail::require(s, ConditionId::COR22);
  Evaluation<T> ev;
  const std::size_t terms = s.ind_a + opts.extra_terms;
  ev.orders["series"] = terms;
  // a is nilpotent, so a^pi = 1.
  ev.value = detail::bd_series(s, T{-1}, terms);
  return ev;
}

/// b a^pi = 0:  (a+b)^d = c^d + sum_n a^n a^pi b (c^d)^{n+2}.
template <ExactField T>
Evaluation<T> sum_cor23(const Matrix<T> &a, const Matrix<T> &b, SeriesOptions opts = {}) {
  const PairSpectra<T> s(a, b);
  detail::require(s, ConditionId::COR23);
  Evaluation<T> ev;
  const Matrix<T> c = detail::core_part(s);
  const Matrix<T> cd = corner_drazin(c, s.p).ad;
  const std::size_t ta = s.ind_a + opts.extra_terms;
  ev.orders["series"] = ta;
  ev.value = cd;
  Matrix<T> a_tail = s.api;
  Matrix<T> cd_pow = cd * cd;
  for (std::size_t k = 0; k < ta; ++k) {
    ev.value += a_tail * b * cd_pow;
    a_tail = a * a_tail;
    cd_pow = cd_pow * cd;
  }
  return ev;
}

/// a^d a b = 0 specialisation of the second formula; c^d = a^d.
///   a^d + sum_n (b^d)^{n+1} (-a)^n a^pi - sum_n (b^d)^{n+1} (-a)^n b a^d + [tail]
template <ExactField T>
Evaluation<T> sum_cor24(const Matrix<T> &a, const Matrix<T> &b, SeriesOptions opts = {}) {
  const PairSpectra<T> s(a, b);
  detail::require(s, ConditionId::COR24);
  Evaluation<T> ev;
  const std::size_t ta = s.ind_a + opts.extra_terms;
  const Matrix<T> y1 = detail::bd_series(s, T{-1}, ta);
  ev.orders["Y1"] = ta;

  Matrix<T> y2 = Matrix<T>::zero(s.n());
  Matrix<T> bd_pow = s.bd;
  Matrix<T> neg_a_pow = Matrix<T>::identity(s.n());
  for (std::size_t k = 0; k < ta; ++k) {
    y2 += bd_pow * neg_a_pow * b * s.ad;
    bd_pow = bd_pow * s.bd;
    neg_a_pow = neg_a_pow * (-a);
  }
  ev.orders["Y2"] = ta;

  const Matrix<T> tail = detail::corner_tail(s, y1, s.ad, opts, ev.orders);
  ev.value = s.ad + y1 - y2 + tail;
  return ev;
}

/// Second formula with c^d given explicitly (as for THM22).
template <ExactField T>
Evaluation<T> sum_cor25(const Matrix<T> &a, const Matrix<T> &b, SeriesOptions opts = {}) {
  const PairSpectra<T> s(a, b);
  detail::require(s, ConditionId::COR25);
  const Matrix<T> c = detail::core_part(s);
  TruncationOrders eq6_orders;
  const Matrix<T> cd = detail::eq6(s, opts, eq6_orders);
  auto ev = detail::assemble_thm23(s, c, cd, corner_index(c, s.p), opts);
  ev.orders.merge(eq6_orders);
  return ev;
}

/// Reverse-algebra duals. Transposition is an anti-automorphism with
/// (x^T)^d = (x^d)^T, so COR26(a, b) is THM21(a^T, b^T) read backwards and
/// COR27(a, b) is THM23(a^T, b^T).
template <ExactField T>
Evaluation<T> sum_dual(const Matrix<T> &a, const Matrix<T> &b, ConditionId id, SeriesOptions opts = {}) {
  if (id != ConditionId::COR26 && id != ConditionId::COR27)
    throw Error("sum_dual supports COR26 and COR27 only, got " + std::string(to_string(id)));
  detail::require(PairSpectra<T>(a, b), id);
  auto ev = id == ConditionId::COR26 ? sum_thm21(a.transpose(), b.transpose(), opts)
                                     : sum_thm23(a.transpose(), b.transpose(), opts);
  ev.value = ev.value.transpose();
  return ev;
}

/// Runs the formula attached to `id`. Throws HypothesisViolation when its
/// condition fails and Error for LIU, which has no formula.
template <ExactField T>
Evaluation<T> evaluate_formula(const Matrix<T> &a, const Matrix<T> &b, ConditionId id, SeriesOptions opts = {}) {
  switch (id) {
  case ConditionId::THM21: return sum_thm21(a, b, opts);
  case ConditionId::THM22: return sum_thm22(a, b, opts);
  case ConditionId::THM23: return sum_thm23(a, b, opts);
  case ConditionId::COR21: return sum_cor21(a, b, opts);
  case ConditionId::COR22: return sum_cor22(a, b, opts);
  case ConditionId::COR23: return sum_cor23(a, b, opts);
  case ConditionId::COR24: return sum_cor24(a, b, opts);
  case ConditionId::COR25: return sum_cor25(a, b, opts);
  case ConditionId::COR26:
  case ConditionId::COR27: return sum_dual(a, b, id, opts);
  case ConditionId::LEM12: return sum_lemma12(a, b, opts);
  case ConditionId::LEM13: return sum_lemma13(a, b, opts);
  case ConditionId::LIU: break;
  }
  throw Error("no formula for condition " + std::string(to_string(id)));
}

template <ExactField T>
struct VerificationReport {
  ConditionId condition;
  bool condition_holds = false;
  std::optional<Matrix<T>> formula_result; ///< absent when the condition fails or has no formula
  Matrix<T> oracle_result;                 ///< drazin(a + b).ad
  bool exact_match = false;
  TruncationOrders truncation_orders;
};

/// Checks `id` on (a, b); when it holds, evaluates the matching formula and
/// compares it entrywise with the Drazin inverse of a + b.
template <ExactField T>
VerificationReport<T> verify_formula(const Matrix<T> &a, const Matrix<T> &b, ConditionId id,
                                     const Matrix<T> *oracle = nullptr) {
  require_same_square(a, b, "verify_formula");
  VerificationReport<T> r;
  r.condition = id;
  r.oracle_result = oracle ? *oracle : drazin(a + b).ad;
  r.condition_holds = check_condition(a, b, id);
  if (!r.condition_holds || !has_formula(id)) return r;
  auto ev = evaluate_formula(a, b, id);
  r.exact_match = ev.value == r.oracle_result;
  r.formula_result = std::move(ev.value);
  r.truncation_orders = std::move(ev.orders);
  return r;
}

template <ExactField T>
struct FullReport {
  std::vector<VerificationReport<T>> reports;
  /// Drazin invertibility of the elements the existence equivalences are stated
  /// for. Always true for matrices; computed and checked, not assumed.
  std::map<std::string, bool> drazin_invertible;

  [[nodiscard]] bool all_formulas_match() const {
    for (const auto &r : reports)
      if (r.formula_result && !r.exact_match) return false;
    return true;
  }
};

template <ExactField T>
FullReport<T> full_report(const Matrix<T> &a, const Matrix<T> &b) {
  require_same_square(a, b, "full_report");
  FullReport<T> out;
  const Matrix<T> oracle = drazin(a + b).ad;
  for (auto id : all_conditions) out.reports.push_back(verify_formula(a, b, id, &oracle));

  const PairSpectra<T> s(a, b);
  const Matrix<T> sum = a + b;
  const Matrix<T> one = Matrix<T>::identity(a.rows());
  const std::map<std::string, Matrix<T>> elements = {
      {"a+b", sum},
      {"aa^d(a+b)", s.p * sum},
      {"(a+b)aa^d", sum * s.p},
      {"aa^d(a+b)aa^d", s.p * sum * s.p},
      {"1+a^d b", one + s.ad * b},
  };
  for (const auto &[name, x] : elements) out.drazin_invertible[name] = verify_drazin(x, drazin(x).ad);
  return out;
}

} // namespace gdrazin
