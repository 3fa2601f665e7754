#pragma once

#include <cstdint>
#include <span>

#include "tdenoise/patch.hpp"

namespace tdenoise {

/// img + N(0, sigma^2) per entry, drawn from the counter stream keyed by
/// (seed, linear index). No clipping.
Image add_awgn(const Image& img, double sigma, std::uint64_t seed);

/// Band b (of B) gets sigma_lo + (sigma_hi - sigma_lo) * b / (B - 1).
Image add_awgn_band_ramp(const Image& img, double sigma_lo, double sigma_hi, std::uint64_t seed);

/// Vertical stripes: each listed band gets a per-column constant offset
/// drawn uniformly from [-amplitude, amplitude].
Image add_stripes(const Image& img, std::span<const std::size_t> bands, double amplitude,
                  std::uint64_t seed);

}  // namespace tdenoise
