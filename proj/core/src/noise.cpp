#include "tdenoise/noise.hpp"

#include <cmath>
#include <numbers>

#include "tdenoise/random.hpp"

namespace tdenoise {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double uniform01(std::uint64_t seed, std::uint64_t index) noexcept {
  const std::uint64_t bits = mix64(mix64(seed) ^ mix64(index ^ 0xD1B54A32D192ED03ULL));
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

double standard_normal(std::uint64_t seed, std::uint64_t index) noexcept {
  const double u1 = uniform01(seed, 2 * index);
  const double u2 = uniform01(seed, 2 * index + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Image add_awgn(const Image& img, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw ArgumentError("add_awgn: sigma must be >= 0");
  Image out = img;
  if (sigma == 0.0) return out;
  auto data = out.data();
  for (std::size_t i = 0; i < data.size(); ++i) data[i] += sigma * standard_normal(seed, i);
  return out;
}

Image add_awgn_band_ramp(const Image& img, double sigma_lo, double sigma_hi, std::uint64_t seed) {
  const std::size_t bands = img.extent(3);
  if (bands < 2) throw ArgumentError("add_awgn_band_ramp: need at least 2 bands");
  if (!(sigma_lo >= 0.0) || sigma_hi < sigma_lo) {
    throw ArgumentError("add_awgn_band_ramp: need 0 <= sigma_lo <= sigma_hi");
  }
  Image out = img;
  const std::size_t plane = img.extent(1) * img.extent(2);
  auto data = out.data();
  for (std::size_t b = 0; b < bands; ++b) {
    const double sigma = sigma_lo + (sigma_hi - sigma_lo) * static_cast<double>(b) /
                                        static_cast<double>(bands - 1);
    for (std::size_t i = b * plane; i < (b + 1) * plane; ++i) {
      data[i] += sigma * standard_normal(seed, i);
    }
  }
  return out;
}

Image add_stripes(const Image& img, std::span<const std::size_t> bands, double amplitude,
                  std::uint64_t seed) {
  const std::size_t h = img.extent(1);
  const std::size_t w = img.extent(2);
  const std::size_t n_bands = img.extent(3);
  if (!(amplitude >= 0.0)) throw ArgumentError("add_stripes: amplitude must be >= 0");
  Image out = img;
  const std::uint64_t stripe_seed = mix64(seed ^ 0x5354524950455321ULL);
  for (std::size_t b : bands) {
    if (b >= n_bands) throw ArgumentError("add_stripes: band index out of range");
    for (std::size_t c = 0; c < w; ++c) {
      const double offset = amplitude * (2.0 * uniform01(stripe_seed, b * w + c) - 1.0);
      for (std::size_t r = 0; r < h; ++r) out(r, c, b) += offset;
    }
  }
  return out;
}

}  // namespace tdenoise
