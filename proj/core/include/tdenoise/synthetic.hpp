#pragma once

#include <cstddef>
#include <cstdint>

#include "tdenoise/patch.hpp"

// Deterministic test scenes used by the tests, benches and the `bench` CLI.

namespace tdenoise::synthetic {

/// Piecewise-constant color scene: flat background with rectangles, disks
/// and a bar pattern, integer values in [20, 235].
Image color_scene(std::size_t size, std::uint64_t seed = 1);

/// Piecewise-constant multispectral cube: a handful of materials with smooth
/// spectral signatures laid out in rectangles and disks.
Image msi_cube(std::size_t height, std::size_t width, std::size_t bands, std::uint64_t seed = 1);

/// Color image whose three channels are equal, integer valued.
Image gray_color_scene(std::size_t size, std::uint64_t seed = 1);

}  // namespace tdenoise::synthetic
