#include "tdenoise/patch.hpp"

#include <algorithm>
#include <string>

namespace tdenoise {

std::vector<Position> PatchGrid::positions() const {
  std::vector<Position> out;
  out.reserve(size());
  for (std::size_t r : rows)
    for (std::size_t c : cols) out.push_back({r, c});
  return out;
}

namespace {

std::vector<std::size_t> axis_positions(std::size_t dim, std::size_t patch_size,
                                        std::size_t step) {
  std::vector<std::size_t> out;
  const std::size_t last = dim - patch_size;
  for (std::size_t p = 0; p <= last; p += step) out.push_back(p);
  if (out.back() != last) out.push_back(last);
  return out;
}

}  // namespace

PatchGrid reference_grid(std::size_t height, std::size_t width, std::size_t patch_size,
                         std::size_t step) {
  if (patch_size == 0 || step == 0) throw ArgumentError("reference_grid: ps and step must be positive");
  if (patch_size > height || patch_size > width) {
    throw ArgumentError("patch size " + std::to_string(patch_size) + " exceeds image size " +
                        std::to_string(height) + "x" + std::to_string(width));
  }
  return {axis_positions(height, patch_size, step), axis_positions(width, patch_size, step),
          patch_size, step};
}

void copy_patch(const Image& img, Position pos, std::size_t patch_size, std::span<double> out) {
  const std::size_t h = img.extent(1);
  const std::size_t w = img.extent(2);
  const std::size_t channels = img.extent(3);
  auto src = img.data();
  std::size_t o = 0;
  for (std::size_t ch = 0; ch < channels; ++ch)
    for (std::size_t dc = 0; dc < patch_size; ++dc) {
      const double* col = src.data() + pos.row + h * (pos.col + dc + w * ch);
      for (std::size_t dr = 0; dr < patch_size; ++dr) out[o++] = col[dr];
    }
}

RealTensor extract_patches(const Image& img, std::span<const Position> coords,
                           std::size_t patch_size) {
  const std::size_t channels = img.extent(3);
  RealTensor out({patch_size, patch_size, channels, coords.size()});
  const std::size_t stride = patch_size * patch_size * channels;
  auto data = out.data();
  for (std::size_t k = 0; k < coords.size(); ++k) {
    const Position p = coords[k];
    if (p.row + patch_size > img.extent(1) || p.col + patch_size > img.extent(2)) {
      throw ArgumentError("patch coordinate outside image bounds");
    }
    copy_patch(img, p, patch_size, data.subspan(k * stride, stride));
  }
  return out;
}

namespace {

struct Candidate {
  double distance;
  std::size_t row;
  std::size_t col;
};

bool candidate_less(const Candidate& a, const Candidate& b) {
  if (a.distance != b.distance) return a.distance < b.distance;
  if (a.row != b.row) return a.row < b.row;
  return a.col < b.col;
}

}  // namespace

BlockMatcher::BlockMatcher(const Image& img, std::size_t patch_size, std::size_t search_radius,
                           std::size_t group_size, MatchMetric metric)
    : patch_size_(patch_size),
      search_radius_(search_radius),
      group_size_(group_size),
      metric_(metric) {
  if (img.order() < 2) throw ArgumentError("BlockMatcher: image must be H x W x C");
  if (group_size == 0) throw ArgumentError("BlockMatcher: K must be positive");
  if (patch_size == 0 || patch_size > img.extent(1) || patch_size > img.extent(2)) {
    throw ArgumentError("BlockMatcher: patch size exceeds image size");
  }
  const std::size_t h = img.extent(1);
  const std::size_t w = img.extent(2);
  const std::size_t channels = img.extent(3);
  if (metric == MatchMetric::full) {
    features_ = RealTensor({h, w, channels}, std::vector<double>(img.data().begin(), img.data().end()));
  } else {
    // Zero-frequency channel slice up to 1/sqrt(C); the 1/C on distances
    // restores the unitary scaling without rounding the features.
    features_ = RealTensor({h, w, 1});
    auto dst = features_.data();
    auto src = img.data();
    for (std::size_t ch = 0; ch < channels; ++ch)
      for (std::size_t i = 0; i < h * w; ++i) dst[i] += src[i + h * w * ch];
    scale_ = static_cast<double>(channels);
  }
}

double BlockMatcher::distance(Position a, Position b) const {
  const std::size_t h = features_.extent(1);
  const std::size_t w = features_.extent(2);
  const std::size_t nf = features_.extent(3);
  auto f = features_.data();
  double acc = 0.0;
  for (std::size_t ch = 0; ch < nf; ++ch)
    for (std::size_t dc = 0; dc < patch_size_; ++dc) {
      const double* pa = f.data() + a.row + h * (a.col + dc + w * ch);
      const double* pb = f.data() + b.row + h * (b.col + dc + w * ch);
      for (std::size_t dr = 0; dr < patch_size_; ++dr) {
        const double d = pa[dr] - pb[dr];
        acc += d * d;
      }
    }
  return acc / scale_;
}

std::size_t BlockMatcher::match(Position ref, std::vector<Position>& out) const {
  const std::size_t h = features_.extent(1);
  const std::size_t w = features_.extent(2);
  const std::size_t nf = features_.extent(3);
  const std::size_t ps = patch_size_;
  const std::size_t r_lo = ref.row > search_radius_ ? ref.row - search_radius_ : 0;
  const std::size_t c_lo = ref.col > search_radius_ ? ref.col - search_radius_ : 0;
  const std::size_t r_hi = std::min(h - ps, ref.row + search_radius_);
  const std::size_t c_hi = std::min(w - ps, ref.col + search_radius_);

  thread_local std::vector<double> ref_patch;
  thread_local std::vector<Candidate> candidates;
  ref_patch.resize(ps * ps * nf);
  copy_patch(features_, ref, ps, ref_patch);

  candidates.clear();
  auto f = features_.data();
  for (std::size_t c = c_lo; c <= c_hi; ++c) {
    for (std::size_t r = r_lo; r <= r_hi; ++r) {
      if (r == ref.row && c == ref.col) continue;
      double acc = 0.0;
      const double* rp = ref_patch.data();
      for (std::size_t ch = 0; ch < nf; ++ch)
        for (std::size_t dc = 0; dc < ps; ++dc) {
          const double* col = f.data() + r + h * (c + dc + w * ch);
          for (std::size_t dr = 0; dr < ps; ++dr) {
            const double d = col[dr] - rp[dr];
            acc += d * d;
          }
          rp += ps;
        }
      candidates.push_back({acc / scale_, r, c});
    }
  }

  const std::size_t wanted = std::min(group_size_ - 1, candidates.size());
  const auto kept = candidates.begin() + static_cast<std::ptrdiff_t>(wanted);
  if (wanted < candidates.size()) std::nth_element(candidates.begin(), kept, candidates.end(), candidate_less);
  std::sort(candidates.begin(), kept, candidate_less);

  out.clear();
  out.push_back(ref);
  for (std::size_t i = 0; i < wanted; ++i) out.push_back({candidates[i].row, candidates[i].col});
  const std::size_t padded = group_size_ - out.size();
  while (out.size() < group_size_) out.push_back(ref);
  return padded;
}

PatchGroup match_block(const Image& img, Position ref, const FilterParams& params,
                       MatchMetric metric) {
  const BlockMatcher matcher(img, params.patch_size, params.search_radius, params.group_size,
                             metric);
  PatchGroup group;
  group.padded = matcher.match(ref, group.coords);
  group.data = extract_patches(img, group.coords, params.patch_size);
  return group;
}

Aggregator::Aggregator(std::size_t height, std::size_t width, std::size_t channels)
    : numerator_({height, width, channels}), weight_({height, width, channels}) {}

void Aggregator::accumulate(const PatchGroup& filtered, WeightMode mode, std::size_t n_retained) {
  const double w = mode == WeightMode::uniform ? 1.0 : 1.0 / (1.0 + static_cast<double>(n_retained));
  accumulate(filtered.coords, filtered.data, w);
}

void Aggregator::accumulate(std::span<const Position> coords, const RealTensor& patches,
                            double weight) {
  const std::size_t h = numerator_.extent(1);
  const std::size_t w = numerator_.extent(2);
  const std::size_t channels = numerator_.extent(3);
  const std::size_t ps = patches.extent(1);
  if (patches.extent(3) != channels || patches.extent(4) != coords.size()) {
    throw ArgumentError("Aggregator: group shape does not match image");
  }
  auto num = numerator_.data();
  auto wt = weight_.data();
  auto src = patches.data();
  std::size_t o = 0;
  for (const Position p : coords) {
    if (p.row + ps > h || p.col + ps > w) throw ArgumentError("Aggregator: patch out of bounds");
    for (std::size_t ch = 0; ch < channels; ++ch)
      for (std::size_t dc = 0; dc < ps; ++dc) {
        const std::size_t base = p.row + h * (p.col + dc + w * ch);
        for (std::size_t dr = 0; dr < ps; ++dr) {
          num[base + dr] += weight * src[o++];
          wt[base + dr] += weight;
        }
      }
  }
}

void Aggregator::merge(const Aggregator& other) {
  if (other.numerator_.shape() != numerator_.shape()) {
    throw ArgumentError("Aggregator::merge: shape mismatch");
  }
  auto num = numerator_.data();
  auto wt = weight_.data();
  auto onum = other.numerator_.data();
  auto owt = other.weight_.data();
  for (std::size_t i = 0; i < num.size(); ++i) {
    num[i] += onum[i];
    wt[i] += owt[i];
  }
}

Image Aggregator::finalize() const {
  Image out(numerator_.shape());
  auto dst = out.data();
  auto num = numerator_.data();
  auto wt = weight_.data();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    if (!(wt[i] > 0.0)) {
      throw InvariantError("Aggregator::finalize: pixel " + std::to_string(i) +
                           " received no patch");
    }
    dst[i] = num[i] / wt[i];
  }
  return out;
}

}  // namespace tdenoise
