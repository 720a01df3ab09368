#pragma once

#include "gdrazin/errors.hpp"

#include <gmpxx.h>

#include <concepts>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

namespace gdrazin {

/// Parses a rational literal of the form `[-]digits[/digits]` into canonical form.
inline mpq_class parse_rational(std::string_view text) {
  auto is_digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char ch : s)
      if (ch < '0' || ch > '9') return false;
    return true;
  };
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
  if (!is_digits(num) || (slash != std::string_view::npos && !is_digits(den)))
    throw ParseError("malformed rational literal '" + std::string(text) + "'");
  if (slash != std::string_view::npos && den.find_first_not_of('0') == std::string_view::npos)
    throw ParseError("zero denominator in '" + std::string(text) + "'");

  std::string literal(text.front() == '+' ? text.substr(1) : text);
  mpq_class q;
  if (q.set_str(literal, 10) != 0) throw ParseError("malformed rational literal '" + literal + "'");
  q.canonicalize();
  return q;
}

/// Element of Q(i): exact complex number with rational real and imaginary parts.
///
/// Both parts are kept in lowest terms with a positive denominator, so `==` is
/// structural equality.
class GaussianRational {
public:
  GaussianRational() = default;

  template <std::integral I>
  GaussianRational(I re) : re_(static_cast<long>(re)) {} // NOLINT(google-explicit-constructor)

  GaussianRational(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) { // NOLINT
    re_.canonicalize();
    im_.canonicalize();
  }

  [[nodiscard]] const mpq_class &real() const noexcept { return re_; }
  [[nodiscard]] const mpq_class &imag() const noexcept { return im_; }

  [[nodiscard]] bool is_zero() const noexcept { return sgn(re_) == 0 && sgn(im_) == 0; }
  [[nodiscard]] bool is_real() const noexcept { return sgn(im_) == 0; }
  [[nodiscard]] GaussianRational conj() const { return {re_, -im_}; }
  /// |z|^2, which is rational.
  [[nodiscard]] mpq_class norm() const { return mpq_class(re_ * re_ + im_ * im_); }

  GaussianRational operator-() const { return {-re_, -im_}; }

  GaussianRational &operator+=(const GaussianRational &o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational &operator-=(const GaussianRational &o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational &operator*=(const GaussianRational &o) {
    if (is_real() && o.is_real()) {
      re_ *= o.re_;
      return *this;
    }
    mpq_class re = re_ * o.re_ - im_ * o.im_;
    mpq_class im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
  }
  GaussianRational &operator/=(const GaussianRational &o) {
    if (o.is_zero()) throw DivisionByZero();
    if (o.is_real()) {
      re_ /= o.re_;
      im_ /= o.re_;
      return *this;
    }
    // z / w = z * conj(w) / |w|^2
    const mpq_class n = o.norm();
    *this *= o.conj();
    re_ /= n;
    im_ /= n;
    return *this;
  }

  friend GaussianRational operator+(GaussianRational x, const GaussianRational &y) { return x += y; }
  friend GaussianRational operator-(GaussianRational x, const GaussianRational &y) { return x -= y; }
  friend GaussianRational operator*(GaussianRational x, const GaussianRational &y) { return x *= y; }
  friend GaussianRational operator/(GaussianRational x, const GaussianRational &y) { return x /= y; }

  friend bool operator==(const GaussianRational &x, const GaussianRational &y) {
    return x.re_ == y.re_ && x.im_ == y.im_;
  }

  /// Canonical text: "R" when the imaginary part is zero, otherwise "R+Ii" or
  /// "R-Ii" with both parts present, e.g. "0+1i", "1/2-3/4i".
  [[nodiscard]] std::string to_string() const {
    std::string out = re_.get_str();
    if (sgn(im_) == 0) return out;
    out += sgn(im_) > 0 ? '+' : '-';
    out += mpq_class(abs(im_)).get_str();
    out += 'i';
    return out;
  }

  /// Inverse of `to_string`. Also accepts a bare imaginary part such as "3i".
  static GaussianRational parse(std::string_view text) {
    if (text.empty()) throw ParseError("empty scalar literal");
    if (text.back() != 'i') return {parse_rational(text), 0};
    const std::string_view body = text.substr(0, text.size() - 1);
    const auto split = body.find_last_of("+-");
    if (split == std::string_view::npos || split == 0) return {0, parse_rational(body)};
    // A sign directly after '/' cannot separate the parts.
    if (body[split - 1] == '/') throw ParseError("malformed scalar literal '" + std::string(text) + "'");
    return {parse_rational(body.substr(0, split)), parse_rational(body.substr(split))};
  }

  friend std::ostream &operator<<(std::ostream &os, const GaussianRational &z) { return os << z.to_string(); }

private:
  mpq_class re_;
  mpq_class im_;
};

} // namespace gdrazin
