#include "tdenoise/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace tdenoise {

std::size_t element_count(const Shape& shape) {
  std::size_t n = 1;
  for (std::size_t e : shape) n *= e;
  return n;
}

Matrix<Complex> to_complex(const Matrix<double>& m) {
  Matrix<Complex> out(m.rows(), m.cols());
  auto src = m.data();
  auto dst = out.data();
  std::copy(src.begin(), src.end(), dst.begin());
  return out;
}

ComplexTensor to_complex(const RealTensor& t) {
  ComplexTensor out(t.shape());
  auto src = t.data();
  auto dst = out.data();
  std::copy(src.begin(), src.end(), dst.begin());
  return out;
}

namespace {

void check_mode(std::size_t order, std::size_t mode) {
  if (mode < 1 || mode > order) {
    throw ArgumentError("mode " + std::to_string(mode) + " out of range for order-" +
                        std::to_string(order) + " tensor");
  }
}

// Strides of the unfolded column index for each mode (0 for the row mode).
std::vector<std::size_t> column_strides(const Shape& shape, std::size_t mode) {
  std::vector<std::size_t> strides(shape.size(), 0);
  std::size_t j = 1;
  for (std::size_t k = 0; k < shape.size(); ++k) {
    if (k + 1 == mode) continue;
    strides[k] = j;
    j *= shape[k];
  }
  return strides;
}

// Calls fn(linear, row, col) for every element in linear order.
template <typename Fn>
void for_each_unfolded(const Shape& shape, std::size_t mode, Fn&& fn) {
  const auto strides = column_strides(shape, mode);
  std::vector<std::size_t> idx(shape.size(), 0);
  const std::size_t total = element_count(shape);
  for (std::size_t e = 0; e < total; ++e) {
    std::size_t col = 0;
    for (std::size_t k = 0; k < shape.size(); ++k) col += idx[k] * strides[k];
    fn(e, idx[mode - 1], col);
    for (std::size_t k = 0; k < shape.size(); ++k) {
      if (++idx[k] < shape[k]) break;
      idx[k] = 0;
    }
  }
}

}  // namespace

template <typename T>
Matrix<T> unfold(const Tensor<T>& t, std::size_t mode) {
  check_mode(t.order(), mode);
  const std::size_t rows = t.extent(mode);
  Matrix<T> m(rows, t.size() / rows);
  auto data = t.data();
  for_each_unfolded(t.shape(), mode,
                    [&](std::size_t e, std::size_t r, std::size_t c) { m(r, c) = data[e]; });
  return m;
}

template <typename T>
Tensor<T> fold(const Matrix<T>& m, std::size_t mode, const Shape& shape) {
  check_mode(shape.size(), mode);
  if (m.rows() != shape[mode - 1] || m.size() != element_count(shape)) {
    throw ArgumentError("fold: matrix dimensions do not match target shape");
  }
  Tensor<T> t(shape);
  auto data = t.data();
  for_each_unfolded(shape, mode,
                    [&](std::size_t e, std::size_t r, std::size_t c) { data[e] = m(r, c); });
  return t;
}

template <typename T>
Tensor<T> mode_product(const Tensor<T>& t, const Matrix<T>& m, std::size_t mode) {
  check_mode(t.order(), mode);
  if (m.cols() != t.extent(mode)) {
    throw ArgumentError("mode_product: matrix has " + std::to_string(m.cols()) +
                        " columns but mode " + std::to_string(mode) + " has extent " +
                        std::to_string(t.extent(mode)));
  }
  Shape out_shape = t.shape();
  out_shape[mode - 1] = m.rows();
  return fold(m * unfold(t, mode), mode, out_shape);
}

template <typename T>
double frobenius_norm(std::span<const T> values) {
  double s = 0.0;
  for (const T& v : values) s += squared_magnitude(v);
  return std::sqrt(s);
}

template <typename T>
double max_abs_difference(std::span<const T> a, std::span<const T> b) {
  if (a.size() != b.size()) throw ArgumentError("max_abs_difference: size mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

template Matrix<double> unfold(const Tensor<double>&, std::size_t);
template Matrix<Complex> unfold(const Tensor<Complex>&, std::size_t);
template Tensor<double> fold(const Matrix<double>&, std::size_t, const Shape&);
template Tensor<Complex> fold(const Matrix<Complex>&, std::size_t, const Shape&);
template Tensor<double> mode_product(const Tensor<double>&, const Matrix<double>&, std::size_t);
template Tensor<Complex> mode_product(const Tensor<Complex>&, const Matrix<Complex>&,
                                      std::size_t);
template double frobenius_norm(std::span<const double>);
template double frobenius_norm(std::span<const Complex>);
template double max_abs_difference(std::span<const double>, std::span<const double>);
template double max_abs_difference(std::span<const Complex>, std::span<const Complex>);

}  // namespace tdenoise
