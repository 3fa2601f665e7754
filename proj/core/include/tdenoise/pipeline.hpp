#pragma once

#include <optional>
#include <string>

#include "tdenoise/metrics.hpp"
#include "tdenoise/params.hpp"
#include "tdenoise/patch.hpp"
#include "tdenoise/transforms.hpp"

namespace tdenoise {

/// Seconds spent per stage, summed over workers.
struct StageTimes {
  double training = 0.0;
  double grouping = 0.0;
  double pca = 0.0;
  double filtering = 0.0;
  double aggregation = 0.0;

  double grouping_and_pca() const noexcept { return grouping + pca; }
};

struct DenoiseReport {
  std::string method;
  FilterParams params;
  double tau = 0.0;
  double seconds = 0.0;
  std::size_t groups = 0;
  /// Mean over groups of n_retained / (ps * ps * C * K).
  double retained_fraction = 0.0;
  StageTimes stages;
  std::optional<MetricBlock> metrics;
};

struct DenoiseResult {
  Image image;
  DenoiseReport report;
};

/// Global basis on all reference patches, full-channel grouping, full local
/// PCA, hard threshold, uniform or sparsity-weighted aggregation. A
/// pretrained basis (e.g. from a cache) skips the training stage.
DenoiseResult denoise_mstsvd(const Image& img, const FilterParams& params,
                             const GlobalBasis* pretrained = nullptr);

/// MSt-SVD with grouping and local PCA on the zero-frequency channel slice
/// only. Requires exactly 3 channels.
DenoiseResult denoise_cmstsvd(const Image& img, const FilterParams& params,
                              const GlobalBasis* pretrained = nullptr);

/// Runs MSt-SVD on the (B, H, W)-permuted cube and permutes back.
DenoiseResult denoise_twist(const Image& img, const FilterParams& params);

/// Per-group learned 4D transform (all four factors), hard threshold.
DenoiseResult denoise_hosvd4d(const Image& img, const FilterParams& params);

/// Dispatches on params.method.
DenoiseResult denoise(const Image& img, const FilterParams& params);

/// (H, W, B) -> (B, H, W) and back.
Image twist_axes(const Image& img);
Image untwist_axes(const Image& twisted);

/// The training stage of MSt-SVD / CMSt-SVD on its own.
GlobalBasis train_global_basis_for(const Image& img, const FilterParams& params);

}  // namespace tdenoise
