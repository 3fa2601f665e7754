#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "tdenoise/errors.hpp"

namespace tdenoise {

using Complex = std::complex<double>;
using Shape = std::vector<std::size_t>;

template <typename T>
inline constexpr bool is_complex_v = false;
template <typename T>
inline constexpr bool is_complex_v<std::complex<T>> = true;

inline double squared_magnitude(double v) { return v * v; }
inline double squared_magnitude(const Complex& v) { return std::norm(v); }
inline double conjugate(double v) { return v; }
inline Complex conjugate(const Complex& v) { return std::conj(v); }

/// Dense column-major matrix.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
      throw ArgumentError("matrix data size does not match its dimensions");
    }
  }

  /// Row-major literal, e.g. Matrix<double>::from_rows({{1, 2}, {3, 4}}).
  static Matrix from_rows(std::initializer_list<std::initializer_list<T>> rows);
  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }

  T& operator()(std::size_t r, std::size_t c) noexcept { return data_[r + rows_ * c]; }
  const T& operator()(std::size_t r, std::size_t c) const noexcept {
    return data_[r + rows_ * c];
  }

  std::span<T> data() noexcept { return data_; }
  std::span<const T> data() const noexcept { return data_; }
  std::span<T> column(std::size_t c) noexcept { return {data_.data() + rows_ * c, rows_}; }
  std::span<const T> column(std::size_t c) const noexcept {
    return {data_.data() + rows_ * c, rows_};
  }

  Matrix transpose() const;
  /// Conjugate transpose (equals transpose() for real T).
  Matrix adjoint() const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <typename T>
Matrix<T> Matrix<T>::from_rows(std::initializer_list<std::initializer_list<T>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  Matrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw ArgumentError("ragged matrix literal");
    std::size_t j = 0;
    for (const T& v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

template <typename T>
Matrix<T> Matrix<T>::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
  return m;
}

template <typename T>
Matrix<T> Matrix<T>::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t c = 0; c < cols_; ++c)
    for (std::size_t r = 0; r < rows_; ++r) t(c, r) = (*this)(r, c);
  return t;
}

template <typename T>
Matrix<T> Matrix<T>::adjoint() const {
  Matrix t(cols_, rows_);
  for (std::size_t c = 0; c < cols_; ++c)
    for (std::size_t r = 0; r < rows_; ++r) t(c, r) = conjugate((*this)(r, c));
  return t;
}

template <typename T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw ArgumentError("matrix product dimension mismatch");
  Matrix<T> out(a.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T bkj = b(k, j);
      if (bkj == T{}) continue;
      for (std::size_t i = 0; i < a.rows(); ++i) out(i, j) += a(i, k) * bkj;
    }
  }
  return out;
}

template <typename T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ArgumentError("matrix difference dimension mismatch");
  }
  Matrix<T> out = a;
  auto o = out.data();
  auto bd = b.data();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] -= bd[i];
  return out;
}

Matrix<Complex> to_complex(const Matrix<double>& m);

/// Dense tensor of order 1..4 with mode-1 fastest linearization: entry
/// (i1, i2, i3, i4) lives at i1 + I1*(i2 + I2*(i3 + I3*i4)). Indices are
/// 0-based in code; "mode" arguments are 1-based.
template <typename T>
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(Shape shape, T fill = T{});
  Tensor(Shape shape, std::vector<T> data);

  const Shape& shape() const noexcept { return shape_; }
  std::size_t order() const noexcept { return shape_.size(); }
  /// Extent along a 1-based mode; modes beyond the order have extent 1.
  std::size_t extent(std::size_t mode) const noexcept {
    return mode >= 1 && mode <= shape_.size() ? shape_[mode - 1] : 1;
  }
  std::size_t size() const noexcept { return data_.size(); }

  std::span<T> data() noexcept { return data_; }
  std::span<const T> data() const noexcept { return data_; }
  std::vector<T>& storage() noexcept { return data_; }

  template <typename... I>
  T& operator()(I... idx) noexcept {
    return data_[linear_index(static_cast<std::size_t>(idx)...)];
  }
  template <typename... I>
  const T& operator()(I... idx) const noexcept {
    return data_[linear_index(static_cast<std::size_t>(idx)...)];
  }

  std::size_t linear_index(std::size_t i) const noexcept { return i; }
  std::size_t linear_index(std::size_t i, std::size_t j) const noexcept {
    return i + extent(1) * j;
  }
  std::size_t linear_index(std::size_t i, std::size_t j, std::size_t k) const noexcept {
    return i + extent(1) * (j + extent(2) * k);
  }
  std::size_t linear_index(std::size_t i, std::size_t j, std::size_t k,
                           std::size_t l) const noexcept {
    return i + extent(1) * (j + extent(2) * (k + extent(3) * l));
  }

  bool operator==(const Tensor&) const = default;

 private:
  Shape shape_;
  std::vector<T> data_;
};

using RealTensor = Tensor<double>;
using ComplexTensor = Tensor<Complex>;

std::size_t element_count(const Shape& shape);

template <typename T>
Tensor<T>::Tensor(Shape shape, T fill) : shape_(std::move(shape)) {
  if (shape_.empty() || shape_.size() > 4) throw ArgumentError("tensor order must be 1..4");
  for (std::size_t e : shape_)
    if (e == 0) throw ArgumentError("tensor extents must be positive");
  data_.assign(element_count(shape_), fill);
}

template <typename T>
Tensor<T>::Tensor(Shape shape, std::vector<T> data) : Tensor(std::move(shape)) {
  if (data.size() != data_.size()) throw ArgumentError("tensor data size does not match shape");
  data_ = std::move(data);
}

ComplexTensor to_complex(const RealTensor& t);

/// Mode-n matricization: row index i_n, column index sum_{k != n} i_k J_k
/// with J_k the product of the preceding non-n extents.
template <typename T>
Matrix<T> unfold(const Tensor<T>& t, std::size_t mode);

/// Inverse of unfold for the given target shape.
template <typename T>
Tensor<T> fold(const Matrix<T>& m, std::size_t mode, const Shape& shape);

/// n-mode product t x_n m: every mode-n fiber is multiplied by m.
template <typename T>
Tensor<T> mode_product(const Tensor<T>& t, const Matrix<T>& m, std::size_t mode);

template <typename T>
double frobenius_norm(std::span<const T> values);

template <typename T>
double frobenius_norm(const Tensor<T>& t) {
  return frobenius_norm(t.data());
}

template <typename T>
double frobenius_norm(const Matrix<T>& m) {
  return frobenius_norm(m.data());
}

/// Largest entrywise magnitude of a - b; shapes must agree.
template <typename T>
double max_abs_difference(std::span<const T> a, std::span<const T> b);

template <typename T>
double max_abs_difference(const Matrix<T>& a, const Matrix<T>& b) {
  return max_abs_difference<T>(a.data(), b.data());
}

template <typename T>
double max_abs_difference(const Tensor<T>& a, const Tensor<T>& b) {
  if (a.shape() != b.shape()) throw ArgumentError("max_abs_difference: shape mismatch");
  return max_abs_difference<T>(a.data(), b.data());
}

}  // namespace tdenoise
