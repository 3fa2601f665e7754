#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "tdenoise/patch.hpp"
#include "tdenoise/transforms.hpp"

namespace tdenoise {

/// Format by path: a directory of band_NN rasters, `.msi` (MSI1 container),
/// or an 8-bit raster (`.png`, `.ppm`, `.pgm`).
Image read_image(const std::filesystem::path& path);
/// Rasters are clamped to [0, 255] and rounded half-up; `.msi` is lossless
/// at float32 precision; an existing directory receives band_NN.pgm files.
void write_image(const std::filesystem::path& path, const Image& img);

/// MSI1: "MSI1", little-endian u32 H, W, C, then H*W*C little-endian float32
/// in tensor order (rows fastest, then columns, then bands).
Image read_msi(const std::filesystem::path& path);
void write_msi(const std::filesystem::path& path, const Image& img);

Image read_band_directory(const std::filesystem::path& dir);
void write_band_directory(const std::filesystem::path& dir, const Image& img);

std::uint8_t to_byte(double value) noexcept;

/// FNV-1a over the shape and the float64 samples.
std::uint64_t image_hash(const Image& img);

/// Basis cache: "GBAS", u32 version, u32 ps, u32 channels, u32 slices,
/// u64 key, then per slice u_row and u_col as column-major little-endian
/// float64 (re, im) pairs.
void save_global_basis(const std::filesystem::path& path, const GlobalBasis& basis,
                       std::uint64_t key);
/// nullopt when the file is missing or was written for another key.
std::optional<GlobalBasis> load_global_basis(const std::filesystem::path& path,
                                             std::uint64_t key);

}  // namespace tdenoise
