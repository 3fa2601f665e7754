#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tdenoise/dft.hpp"
#include "tdenoise/patch.hpp"
#include "tdenoise/tensor.hpp"

namespace tdenoise {

/// Patch basis shared by every group of an image: for each retained Fourier
/// slice j = 0 .. floor(N/2) a unitary row transform and column transform.
/// Slices above floor(N/2) are the conjugates of their mirrors.
struct GlobalBasis {
  std::size_t patch_size = 0;
  std::size_t n_channels = 0;
  std::vector<Matrix<Complex>> u_row;
  std::vector<Matrix<Complex>> u_col;

  std::size_t retained() const noexcept { return u_row.size(); }
  static GlobalBasis identity(std::size_t patch_size, std::size_t n_channels);
};

/// Accumulates per-slice Hermitian Grams
///   G_row(j) += P_j P_j^H,  G_col(j) += P_j^H P_j
/// of the channel-DFT slices P_j of each added patch.
class GlobalBasisTrainer {
 public:
  GlobalBasisTrainer(std::size_t patch_size, std::size_t n_channels);

  /// `patch` is ps x ps x N in tensor order.
  void add(std::span<const double> patch);
  void merge(const GlobalBasisTrainer& other);
  std::size_t count() const noexcept { return count_; }

  /// Eigenvectors of each Gram, descending eigenvalues. All-zero Grams give
  /// identity matrices.
  GlobalBasis finish() const;

 private:
  std::size_t patch_size_;
  std::size_t n_channels_;
  std::size_t count_ = 0;
  Matrix<Complex> dft_rows_;  // retained x N rows of the unitary DFT
  std::vector<Matrix<Complex>> gram_row_;
  std::vector<Matrix<Complex>> gram_col_;
  std::vector<Complex> slice_;
};

GlobalBasis train_global_basis(std::span<const RealTensor> ref_patches);

/// Trains on the reference-grid patches of `img`. With fraction < 1 a
/// seeded subset is used. Grams are summed over a fixed chunking so the
/// result does not depend on `threads`.
GlobalBasis train_global_basis(const Image& img, const PatchGrid& grid, std::size_t threads = 1,
                               double fraction = 1.0, std::uint64_t seed = 0);

enum class PcaMode { full, first_slice };

/// Orthogonal K x K transform along the grouping mode.
struct GroupBasis {
  Matrix<double> u_group;
  std::vector<double> eigenvalues;
};

/// Second-moment PCA (no mean removal) along the grouping mode, keeping all
/// K components. `full` uses every channel; `first_slice` uses only the
/// zero-frequency channel slice.
GroupBasis local_pca(const RealTensor& group, PcaMode mode);
inline GroupBasis local_pca(const PatchGroup& group, PcaMode mode) {
  return local_pca(group.data, mode);
}

/// Gram of the mode-n unfolding, unfold(t, n) * unfold(t, n)^T.
Matrix<double> mode_gram(const RealTensor& t, std::size_t mode);

/// Per-group factors for the 4D multiway transform.
struct HosvdBasis {
  Matrix<double> u_row;
  Matrix<double> u_col;
  Matrix<double> u_color;
  Matrix<double> u_group;
};

HosvdBasis hosvd_basis(const RealTensor& group);
inline HosvdBasis hosvd_basis(const PatchGroup& group) { return hosvd_basis(group.data); }

/// Fixed luminance/chrominance transform (the transpose of U_color).
Matrix<double> opponent_matrix();

}  // namespace tdenoise
