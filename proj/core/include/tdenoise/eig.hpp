#pragma once

#include <vector>

#include "tdenoise/tensor.hpp"

namespace tdenoise {

template <typename T>
struct EigenDecomposition {
  std::vector<double> values;  // descending
  Matrix<T> vectors;           // column i pairs with values[i]
};

/// Cyclic Jacobi eigendecomposition of a Hermitian (or real symmetric)
/// matrix. Sweeps until the off-diagonal norm drops below 1e-12 * ||g||_F.
/// Each eigenvector is rotated so its largest-magnitude entry is real and
/// positive; the first such entry wins on ties. A zero matrix yields the
/// identity.
template <typename T>
EigenDecomposition<T> hermitian_eig(const Matrix<T>& g);

extern template EigenDecomposition<double> hermitian_eig(const Matrix<double>&);
extern template EigenDecomposition<Complex> hermitian_eig(const Matrix<Complex>&);

/// Real symmetric eigendecomposition for the per-group hot path
/// (Householder tridiagonalisation + implicit QL). Same ordering, sign and zero-matrix
/// conventions as hermitian_eig. The input is assumed symmetric.
EigenDecomposition<double> symmetric_eig(const Matrix<double>& g);

}  // namespace tdenoise
