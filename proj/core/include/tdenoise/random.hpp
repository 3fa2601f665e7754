#pragma once

#include <cstdint>

namespace tdenoise {

/// Counter-based generator: every value is a pure function of (seed, index),
/// so noise fields do not depend on evaluation order or worker count.
/// Mixing is SplitMix64; Gaussians use Box-Muller on two uniforms.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Uniform on (0, 1].
double uniform01(std::uint64_t seed, std::uint64_t index) noexcept;

/// Standard normal sample.
double standard_normal(std::uint64_t seed, std::uint64_t index) noexcept;

}  // namespace tdenoise
