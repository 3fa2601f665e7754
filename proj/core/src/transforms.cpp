#include "tdenoise/transforms.hpp"

#include <algorithm>

#include "parallel.hpp"
#include "tdenoise/eig.hpp"
#include "tdenoise/random.hpp"

namespace tdenoise {

GlobalBasis GlobalBasis::identity(std::size_t patch_size, std::size_t n_channels) {
  GlobalBasis b{patch_size, n_channels, {}, {}};
  for (std::size_t j = 0; j < retained_slices(n_channels); ++j) {
    b.u_row.push_back(Matrix<Complex>::identity(patch_size));
    b.u_col.push_back(Matrix<Complex>::identity(patch_size));
  }
  return b;
}

GlobalBasisTrainer::GlobalBasisTrainer(std::size_t patch_size, std::size_t n_channels)
    : patch_size_(patch_size), n_channels_(n_channels) {
  if (patch_size == 0 || n_channels == 0) {
    throw ArgumentError("GlobalBasisTrainer: dimensions must be positive");
  }
  const std::size_t s = retained_slices(n_channels);
  const DftPair dft = dft_pair(n_channels);
  dft_rows_ = Matrix<Complex>(s, n_channels);
  for (std::size_t j = 0; j < s; ++j)
    for (std::size_t ch = 0; ch < n_channels; ++ch) dft_rows_(j, ch) = dft.unitary(j, ch);
  gram_row_.assign(s, Matrix<Complex>(patch_size, patch_size));
  gram_col_.assign(s, Matrix<Complex>(patch_size, patch_size));
  slice_.resize(patch_size * patch_size);
}

void GlobalBasisTrainer::add(std::span<const double> patch) {
  const std::size_t ps = patch_size_;
  const std::size_t area = ps * ps;
  if (patch.size() != area * n_channels_) {
    throw ArgumentError("GlobalBasisTrainer::add: patch has the wrong size");
  }
  for (std::size_t j = 0; j < gram_row_.size(); ++j) {
    std::fill(slice_.begin(), slice_.end(), Complex{});
    for (std::size_t ch = 0; ch < n_channels_; ++ch) {
      const Complex f = dft_rows_(j, ch);
      const double* src = patch.data() + area * ch;
      for (std::size_t i = 0; i < area; ++i) slice_[i] += src[i] * f;
    }
    // slice_ is column-major ps x ps: X(r, c) = slice_[r + ps c].
    Matrix<Complex>& gr = gram_row_[j];
    Matrix<Complex>& gc = gram_col_[j];
    for (std::size_t b = 0; b < ps; ++b)
      for (std::size_t a = 0; a < ps; ++a) {
        Complex row_acc{};
        Complex col_acc{};
        for (std::size_t t = 0; t < ps; ++t) {
          row_acc += slice_[a + ps * t] * std::conj(slice_[b + ps * t]);
          col_acc += std::conj(slice_[t + ps * a]) * slice_[t + ps * b];
        }
        gr(a, b) += row_acc;
        gc(a, b) += col_acc;
      }
  }
  ++count_;
}

void GlobalBasisTrainer::merge(const GlobalBasisTrainer& other) {
  if (other.patch_size_ != patch_size_ || other.n_channels_ != n_channels_) {
    throw ArgumentError("GlobalBasisTrainer::merge: dimension mismatch");
  }
  for (std::size_t j = 0; j < gram_row_.size(); ++j) {
    auto r = gram_row_[j].data();
    auto c = gram_col_[j].data();
    auto orow = other.gram_row_[j].data();
    auto ocol = other.gram_col_[j].data();
    for (std::size_t i = 0; i < r.size(); ++i) {
      r[i] += orow[i];
      c[i] += ocol[i];
    }
  }
  count_ += other.count_;
}

GlobalBasis GlobalBasisTrainer::finish() const {
  GlobalBasis basis{patch_size_, n_channels_, {}, {}};
  for (std::size_t j = 0; j < gram_row_.size(); ++j) {
    basis.u_row.push_back(hermitian_eig(gram_row_[j]).vectors);
    basis.u_col.push_back(hermitian_eig(gram_col_[j]).vectors);
  }
  return basis;
}

GlobalBasis train_global_basis(std::span<const RealTensor> ref_patches) {
  if (ref_patches.empty()) throw ArgumentError("train_global_basis: no patches");
  const RealTensor& first = ref_patches.front();
  if (first.order() < 2 || first.extent(1) != first.extent(2)) {
    throw ArgumentError("train_global_basis: patches must be ps x ps x N");
  }
  GlobalBasisTrainer trainer(first.extent(1), first.extent(3));
  for (const RealTensor& p : ref_patches) {
    if (p.shape() != first.shape()) throw ArgumentError("train_global_basis: mixed patch shapes");
    trainer.add(p.data());
  }
  return trainer.finish();
}

GlobalBasis train_global_basis(const Image& img, const PatchGrid& grid, std::size_t threads,
                               double fraction, std::uint64_t seed) {
  const std::size_t ps = grid.patch_size;
  const std::size_t channels = img.extent(3);
  std::vector<Position> chosen;
  chosen.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (fraction >= 1.0 || uniform01(seed, i) <= fraction) chosen.push_back(grid.at(i));
  }
  if (chosen.empty()) chosen.push_back(grid.at(0));

  constexpr std::size_t kChunks = 32;
  const std::size_t chunks = std::min(kChunks, chosen.size());
  std::vector<GlobalBasisTrainer> partial(chunks, GlobalBasisTrainer(ps, channels));
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, chunks);
  detail::run_workers(workers, [&](std::size_t w) {
    std::vector<double> buffer(ps * ps * channels);
    const auto [c_begin, c_end] = detail::split_range(chunks, workers, w);
    for (std::size_t c = c_begin; c < c_end; ++c) {
      const auto [begin, end] = detail::split_range(chosen.size(), chunks, c);
      for (std::size_t i = begin; i < end; ++i) {
        copy_patch(img, chosen[i], ps, buffer);
        partial[c].add(buffer);
      }
    }
  });
  for (std::size_t c = 1; c < chunks; ++c) partial[0].merge(partial[c]);
  return partial[0].finish();
}

GroupBasis local_pca(const RealTensor& group, PcaMode mode) {
  if (group.order() != 4 && group.order() != 3) {
    throw ArgumentError("local_pca expects a ps x ps x C x K group");
  }
  const std::size_t area = group.extent(1) * group.extent(2);
  const std::size_t channels = group.extent(3);
  const std::size_t k_count = group.extent(4);
  const std::size_t m = area * channels;
  auto data = group.data();

  Matrix<double> gram(k_count, k_count);
  if (mode == PcaMode::full) {
    for (std::size_t a = 0; a < k_count; ++a) {
      const double* xa = data.data() + m * a;
      for (std::size_t b = a; b < k_count; ++b) {
        const double* xb = data.data() + m * b;
        double acc = 0.0;
        for (std::size_t e = 0; e < m; ++e) acc += xa[e] * xb[e];
        gram(a, b) = acc;
        gram(b, a) = acc;
      }
    }
  } else {
    // Channel sums are the zero-frequency slice times sqrt(C).
    std::vector<double> sums(area * k_count, 0.0);
    for (std::size_t k = 0; k < k_count; ++k)
      for (std::size_t ch = 0; ch < channels; ++ch) {
        const double* src = data.data() + m * k + area * ch;
        double* dst = sums.data() + area * k;
        for (std::size_t e = 0; e < area; ++e) dst[e] += src[e];
      }
    const double c = static_cast<double>(channels);
    for (std::size_t a = 0; a < k_count; ++a) {
      const double* xa = sums.data() + area * a;
      for (std::size_t b = a; b < k_count; ++b) {
        const double* xb = sums.data() + area * b;
        double acc = 0.0;
        for (std::size_t e = 0; e < area; ++e) acc += xa[e] * xb[e];
        gram(a, b) = acc / c;
        gram(b, a) = acc / c;
      }
    }
  }
  EigenDecomposition<double> eig = symmetric_eig(gram);
  return {std::move(eig.vectors), std::move(eig.values)};
}

Matrix<double> mode_gram(const RealTensor& t, std::size_t mode) {
  if (mode < 1 || mode > 4) throw ArgumentError("mode_gram: mode out of range");
  const std::size_t extent = t.extent(mode);
  std::size_t stride = 1;
  for (std::size_t m = 1; m < mode; ++m) stride *= t.extent(m);
  const std::size_t outer = t.size() / (extent * stride);
  auto data = t.data();
  Matrix<double> gram(extent, extent);
  for (std::size_t o = 0; o < outer; ++o) {
    const double* block = data.data() + o * extent * stride;
    for (std::size_t a = 0; a < extent; ++a)
      for (std::size_t b = a; b < extent; ++b) {
        const double* xa = block + a * stride;
        const double* xb = block + b * stride;
        double acc = 0.0;
        for (std::size_t i = 0; i < stride; ++i) acc += xa[i] * xb[i];
        gram(a, b) += acc;
      }
  }
  for (std::size_t a = 0; a < extent; ++a)
    for (std::size_t b = a + 1; b < extent; ++b) gram(b, a) = gram(a, b);
  return gram;
}

HosvdBasis hosvd_basis(const RealTensor& group) {
  if (group.order() != 4 && group.order() != 3) {
    throw ArgumentError("hosvd_basis expects a ps x ps x C x K group");
  }
  return {symmetric_eig(mode_gram(group, 1)).vectors, symmetric_eig(mode_gram(group, 2)).vectors,
          symmetric_eig(mode_gram(group, 3)).vectors, symmetric_eig(mode_gram(group, 4)).vectors};
}

Matrix<double> opponent_matrix() {
  return Matrix<double>::from_rows({{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0},
                                    {0.5, 0.0, -0.5},
                                    {0.25, -0.5, 0.25}});
}

}  // namespace tdenoise
