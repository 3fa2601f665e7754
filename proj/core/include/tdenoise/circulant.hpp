#pragma once

#include <cstddef>

#include "tdenoise/tensor.hpp"

// Block-circulant and block-diagonal constructions. Production filtering never
// forms these matrices; they exist to check the Fourier-domain path against
// the explicit circulant algebra.

namespace tdenoise {

/// n1*N x n2*N block circulant matrix of an n1 x n2 x N patch: block (r, c)
/// holds frontal slice (r - c) mod N.
template <typename T>
Matrix<T> bcirc_patch(const Tensor<T>& patch);

/// Block circulant tensor of an n1 x n2 x N x K group: frontal slice k is
/// bcirc_patch of patch k.
template <typename T>
Tensor<T> bcirc_group(const Tensor<T>& group);

/// Block-diagonal arrangement of the frontal slices of an n1 x n2 x N tensor.
template <typename T>
Matrix<T> block_diagonal(const Tensor<T>& slices);

Matrix<Complex> kron(const Matrix<Complex>& a, const Matrix<Complex>& b);

/// (F kron I) bcirc(p) (F kron I)^H with F the unitary DFT. Throws
/// InvariantError unless the result equals block_diagonal(p x_3 W) (W the
/// unnormalized DFT) within 1e-9 relative, off-diagonal blocks included.
Matrix<Complex> bdiag_from_bcirc(const RealTensor& patch);

/// True if every block (r, c) equals block (r+1, c+1) (indices mod n_blocks)
/// within `tol` absolute.
template <typename T>
bool is_block_circulant(const Matrix<T>& m, std::size_t n_blocks, double tol);

}  // namespace tdenoise
