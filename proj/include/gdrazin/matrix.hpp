#pragma once

#include "gdrazin/errors.hpp"

#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gdrazin {

/// Scalar types with exact field arithmetic. `T{}` must be zero and `T{1}` one.
template <class T>
concept ExactField = std::regular<T> && requires(const T &x, const T &y) {
  { T(x + y) };
  { T(x - y) };
  { T(x * y) };
  { T(x / y) };
  { T(-x) };
  { T{1} };
};

/// Dense row-major matrix with value semantics.
///
/// Shapes with a zero extent are allowed so that empty bases (e.g. the kernel of
/// an invertible matrix) have a representation; algebra-level operations check
/// squareness themselves.
template <ExactField T>
class Matrix {
public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
      throw ShapeError("matrix data length " + std::to_string(data_.size()) + " does not match shape " +
                       shape_string());
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows) : rows_(rows.size()) {
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto &row : rows) {
      if (row.size() != cols_) throw ShapeError("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix zero(std::size_t n) { return Matrix(n, n); }
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }
  /// Square diagonal matrix with the given diagonal.
  static Matrix diagonal(std::span<const T> diag) {
    Matrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
  }

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }
  [[nodiscard]] std::span<const T> data() const noexcept { return data_; }

  T &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  [[nodiscard]] std::string shape_string() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  [[nodiscard]] bool is_zero() const {
    const T z{};
    for (const auto &x : data_)
      if (!(x == z)) return false;
    return true;
  }

  [[nodiscard]] Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Rows [r0, r0+nr) and columns [c0, c0+nc).
  [[nodiscard]] Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw ShapeError("block out of range of " + shape_string());
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix &b) {
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_)
      throw ShapeError("block " + b.shape_string() + " does not fit in " + shape_string());
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  friend bool operator==(const Matrix &x, const Matrix &y) = default;

  Matrix &operator+=(const Matrix &o) {
    require_same_shape(o, "add");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] = T(data_[k] + o.data_[k]);
    return *this;
  }
  Matrix &operator-=(const Matrix &o) {
    require_same_shape(o, "sub");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] = T(data_[k] - o.data_[k]);
    return *this;
  }
  Matrix &operator*=(const T &s) {
    for (auto &x : data_) x = T(x * s);
    return *this;
  }

  friend Matrix operator+(Matrix x, const Matrix &y) { return x += y; }
  friend Matrix operator-(Matrix x, const Matrix &y) { return x -= y; }
  friend Matrix operator-(Matrix x) {
    for (auto &v : x.data_) v = T(-v);
    return x;
  }
  friend Matrix operator*(const T &s, Matrix x) { return x *= s; }
  friend Matrix operator*(Matrix x, const T &s) { return x *= s; }

  friend Matrix operator*(const Matrix &x, const Matrix &y) {
    if (x.cols_ != y.rows_)
      throw ShapeError("shape mismatch in mul: " + x.shape_string() + " vs " + y.shape_string());
    Matrix out(x.rows_, y.cols_);
    const T z{};
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const T &xik = x(i, k);
        if (xik == z) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) {
          const T &ykj = y(k, j);
          if (ykj == z) continue;
          out(i, j) = T(out(i, j) + T(xik * ykj));
        }
      }
    return out;
  }

  friend std::ostream &operator<<(std::ostream &os, const Matrix &m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? ", " : "") << m(i, j);
      os << ']';
    }
    return os << ']';
  }

private:
  void require_same_shape(const Matrix &o, std::string_view op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw ShapeError("shape mismatch in " + std::string(op) + ": " + shape_string() + " vs " + o.shape_string());
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <ExactField T>
void require_square(const Matrix<T> &m, std::string_view op) {
  if (!m.is_square()) throw ShapeError(std::string(op) + " requires a square matrix, got " + m.shape_string());
}

template <ExactField T>
void require_same_square(const Matrix<T> &a, const Matrix<T> &b, std::string_view op) {
  if (!a.is_square() || a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError(std::string(op) + " requires square matrices of equal size, got " + a.shape_string() + " and " +
                     b.shape_string());
}

/// [A | B]
template <ExactField T>
Matrix<T> hstack(const Matrix<T> &a, const Matrix<T> &b) {
  if (a.rows() != b.rows()) throw ShapeError("shape mismatch in hstack: " + a.shape_string() + " vs " + b.shape_string());
  Matrix<T> out(a.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(0, a.cols(), b);
  return out;
}

/// diag(A, B)
template <ExactField T>
Matrix<T> block_diag(const Matrix<T> &a, const Matrix<T> &b) {
  Matrix<T> out(a.rows() + b.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), a.cols(), b);
  return out;
}

} // namespace gdrazin
