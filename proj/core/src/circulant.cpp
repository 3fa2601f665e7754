#include "tdenoise/circulant.hpp"

#include <cmath>

#include "tdenoise/dft.hpp"

namespace tdenoise {

template <typename T>
Matrix<T> bcirc_patch(const Tensor<T>& patch) {
  if (patch.order() != 3) throw ArgumentError("bcirc_patch expects an order-3 patch");
  const std::size_t n1 = patch.extent(1);
  const std::size_t n2 = patch.extent(2);
  const std::size_t n = patch.extent(3);
  Matrix<T> m(n1 * n, n2 * n);
  for (std::size_t br = 0; br < n; ++br) {
    for (std::size_t bc = 0; bc < n; ++bc) {
      const std::size_t slice = (br + n - bc) % n;
      for (std::size_t j = 0; j < n2; ++j)
        for (std::size_t i = 0; i < n1; ++i) m(br * n1 + i, bc * n2 + j) = patch(i, j, slice);
    }
  }
  return m;
}

template <typename T>
Tensor<T> bcirc_group(const Tensor<T>& group) {
  if (group.order() != 4) throw ArgumentError("bcirc_group expects an order-4 group");
  const std::size_t n1 = group.extent(1);
  const std::size_t n2 = group.extent(2);
  const std::size_t n = group.extent(3);
  const std::size_t k_count = group.extent(4);
  Tensor<T> out({n1 * n, n2 * n, k_count});
  for (std::size_t k = 0; k < k_count; ++k)
    for (std::size_t br = 0; br < n; ++br)
      for (std::size_t bc = 0; bc < n; ++bc) {
        const std::size_t slice = (br + n - bc) % n;
        for (std::size_t j = 0; j < n2; ++j)
          for (std::size_t i = 0; i < n1; ++i)
            out(br * n1 + i, bc * n2 + j, k) = group(i, j, slice, k);
      }
  return out;
}

template <typename T>
Matrix<T> block_diagonal(const Tensor<T>& slices) {
  if (slices.order() != 3) throw ArgumentError("block_diagonal expects an order-3 tensor");
  const std::size_t n1 = slices.extent(1);
  const std::size_t n2 = slices.extent(2);
  const std::size_t n = slices.extent(3);
  Matrix<T> m(n1 * n, n2 * n);
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t j = 0; j < n2; ++j)
      for (std::size_t i = 0; i < n1; ++i) m(b * n1 + i, b * n2 + j) = slices(i, j, b);
  return m;
}

Matrix<Complex> kron(const Matrix<Complex>& a, const Matrix<Complex>& b) {
  Matrix<Complex> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ac = 0; ac < a.cols(); ++ac)
    for (std::size_t ar = 0; ar < a.rows(); ++ar) {
      const Complex s = a(ar, ac);
      for (std::size_t bc = 0; bc < b.cols(); ++bc)
        for (std::size_t br = 0; br < b.rows(); ++br)
          out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
    }
  return out;
}

Matrix<Complex> bdiag_from_bcirc(const RealTensor& patch) {
  if (patch.order() != 3) throw ArgumentError("bdiag_from_bcirc expects an order-3 patch");
  const std::size_t n = patch.extent(3);
  const DftPair dft = dft_pair(n);
  const Matrix<Complex> left = kron(dft.unitary, Matrix<Complex>::identity(patch.extent(1)));
  const Matrix<Complex> right = kron(dft.unitary, Matrix<Complex>::identity(patch.extent(2)));
  const Matrix<Complex> circ = to_complex(bcirc_patch(patch));
  Matrix<Complex> result = left * circ * right.adjoint();

  const Matrix<Complex> expected =
      block_diagonal(mode_product(to_complex(patch), dft.unnormalized, 3));
  const double scale = std::max(frobenius_norm(patch), 1e-300);
  if (max_abs_difference(result, expected) > 1e-9 * scale) {
    throw InvariantError("bdiag_from_bcirc: block diagonalisation identity violated");
  }
  return result;
}

template <typename T>
bool is_block_circulant(const Matrix<T>& m, std::size_t n_blocks, double tol) {
  if (n_blocks == 0 || m.rows() % n_blocks != 0 || m.cols() % n_blocks != 0) return false;
  const std::size_t br = m.rows() / n_blocks;
  const std::size_t bc = m.cols() / n_blocks;
  for (std::size_t r = 0; r < n_blocks; ++r)
    for (std::size_t c = 0; c < n_blocks; ++c) {
      const std::size_t r2 = (r + 1) % n_blocks;
      const std::size_t c2 = (c + 1) % n_blocks;
      for (std::size_t j = 0; j < bc; ++j)
        for (std::size_t i = 0; i < br; ++i)
          if (std::abs(m(r * br + i, c * bc + j) - m(r2 * br + i, c2 * bc + j)) > tol) return false;
    }
  return true;
}

template Matrix<double> bcirc_patch(const Tensor<double>&);
template Matrix<Complex> bcirc_patch(const Tensor<Complex>&);
template Tensor<double> bcirc_group(const Tensor<double>&);
template Tensor<Complex> bcirc_group(const Tensor<Complex>&);
template Matrix<double> block_diagonal(const Tensor<double>&);
template Matrix<Complex> block_diagonal(const Tensor<Complex>&);
template bool is_block_circulant(const Matrix<double>&, std::size_t, double);
template bool is_block_circulant(const Matrix<Complex>&, std::size_t, double);

}  // namespace tdenoise
