#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include "tdenoise/params.hpp"
#include "tdenoise/tensor.hpp"

namespace tdenoise {

/// H x W x C image, values nominally in [0, 255].
using Image = RealTensor;

struct Position {
  std::size_t row = 0;
  std::size_t col = 0;
  auto operator<=>(const Position&) const = default;
};

/// Reference positions: per axis {0, step, 2 step, ...} plus the last valid
/// offset, so every pixel is covered by some reference patch.
struct PatchGrid {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  std::size_t patch_size = 0;
  std::size_t step = 0;

  std::size_t size() const noexcept { return rows.size() * cols.size(); }
  /// Row-major enumeration: index i -> (rows[i / cols], cols[i % cols]).
  Position at(std::size_t i) const noexcept {
    return {rows[i / cols.size()], cols[i % cols.size()]};
  }
  std::vector<Position> positions() const;
};

PatchGrid reference_grid(std::size_t height, std::size_t width, std::size_t patch_size,
                         std::size_t step);

enum class MatchMetric { full, first_slice };

/// K similar patches stacked as ps x ps x C x K; coords[0] is the reference.
struct PatchGroup {
  RealTensor data;
  std::vector<Position> coords;
  /// Trailing copies of the reference used to fill K in small windows.
  std::size_t padded = 0;
};

/// Copies patches at `coords` into a ps x ps x C x K tensor.
RealTensor extract_patches(const Image& img, std::span<const Position> coords,
                           std::size_t patch_size);
/// Writes the ps x ps x C patch at `pos` into `out` (size ps*ps*C).
void copy_patch(const Image& img, Position pos, std::size_t patch_size, std::span<double> out);

/// Dense block matching inside a (2 SR + 1)^2 window of top-left positions.
/// `full` compares all channels; `first_slice` compares the zero-frequency
/// slice of the channel DFT (channel sum / sqrt(C)). Distances are squared
/// Frobenius norms; ties break on (row, col).
class BlockMatcher {
 public:
  BlockMatcher(const Image& img, std::size_t patch_size, std::size_t search_radius,
               std::size_t group_size, MatchMetric metric);

  /// K positions, reference first, padded with the reference when the
  /// window holds fewer than K candidates. Returns the pad count.
  std::size_t match(Position ref, std::vector<Position>& out) const;

  /// Squared distance between two patches under this matcher's metric.
  double distance(Position a, Position b) const;

  MatchMetric metric() const noexcept { return metric_; }

 private:
  RealTensor features_;  // H x W x F, F = C (full) or 1 (channel sum)
  double scale_ = 1.0;
  std::size_t patch_size_;
  std::size_t search_radius_;
  std::size_t group_size_;
  MatchMetric metric_;
};

PatchGroup match_block(const Image& img, Position ref, const FilterParams& params,
                       MatchMetric metric);

/// Overlapping write-back: running weighted sums per pixel and channel.
class Aggregator {
 public:
  Aggregator(std::size_t height, std::size_t width, std::size_t channels);

  /// Adds every patch of a filtered group. Uniform weights are 1, sparsity
  /// weights are 1 / (1 + n_retained).
  void accumulate(const PatchGroup& filtered, WeightMode mode, std::size_t n_retained = 0);
  void accumulate(std::span<const Position> coords, const RealTensor& patches, double weight);
  void merge(const Aggregator& other);

  /// numerator / weight per entry. Throws InvariantError on zero weight.
  Image finalize() const;

  const RealTensor& numerator() const noexcept { return numerator_; }
  const RealTensor& weight() const noexcept { return weight_; }

 private:
  RealTensor numerator_;
  RealTensor weight_;
};

}  // namespace tdenoise
