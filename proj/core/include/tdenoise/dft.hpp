#pragma once

#include <cstddef>

#include "tdenoise/tensor.hpp"

namespace tdenoise {

/// DFT matrices of size n. `unitary` is F_u[j,k] = exp(-2 pi i jk/n)/sqrt(n)
/// (0-based); the unnormalized W = sqrt(n) F_u is kept for the block-circulant
/// identities. Entries are built from one table of n roots with
/// root[n-m] = conj(root[m]) enforced, so rows j and n-j are exact conjugates.
struct DftPair {
  std::size_t n = 0;
  Matrix<Complex> unitary;
  Matrix<Complex> unnormalized;
};

DftPair dft_pair(std::size_t n);

/// Unitary DFT along mode 3 (the channel mode of a patch or group).
ComplexTensor fft_mode3(const RealTensor& t);
ComplexTensor fft_mode3(const ComplexTensor& t);
ComplexTensor ifft_mode3(const ComplexTensor& t);

/// Number of Fourier slices needed for a real signal of length n.
constexpr std::size_t retained_slices(std::size_t n) noexcept { return n / 2 + 1; }

/// Slice j stands for itself and its mirror n-j unless it is self-conjugate.
constexpr std::size_t slice_multiplicity(std::size_t j, std::size_t n) noexcept {
  return (j == 0 || 2 * j == n) ? 1 : 2;
}

}  // namespace tdenoise
