#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tdenoise {

enum class Method { mstsvd, cmstsvd, twist, hosvd4d };
enum class ImageKind { color, msi };
enum class WeightMode { uniform, sparsity };

std::string_view to_string(Method m);
std::string_view to_string(WeightMode m);
/// Throws ArgumentError for unknown names.
Method parse_method(std::string_view name);
WeightMode parse_weight_mode(std::string_view name);

/// Universal hard threshold gamma * sigma * sqrt(2 ln n_elem).
double compute_tau(double sigma, double gamma, std::size_t n_elem);

struct FilterParams {
  std::size_t patch_size = 8;
  std::size_t group_size = 30;     // K, reference patch included
  std::size_t search_radius = 20;  // pixels, around the reference top-left
  std::size_t step = 4;            // reference grid stride
  double sigma = 0.0;
  double gamma = 1.0;
  std::optional<double> tau_override;
  Method method = Method::mstsvd;
  WeightMode weight_mode = WeightMode::uniform;
  std::size_t threads = 1;
  /// Fraction of reference patches used to train the global basis.
  double training_fraction = 1.0;
  std::uint64_t training_seed = 0;

  std::size_t group_elements(std::size_t channels) const {
    return patch_size * patch_size * channels * group_size;
  }
  double tau(std::size_t channels) const;
  /// Throws ArgumentError on non-positive sizes, negative sigma, etc.
  void validate() const;
};

/// Defaults per method and image kind: ps 8, K 30, step 4, SR 20 (color) or
/// 16 (MSI). gamma: 4DHOSVD 0.8 color / 1.0 MSI; MSt-SVD color 1.1 below
/// sigma 30, 1.2 otherwise; MSt-SVD MSI 1.0.
FilterParams default_params(Method method, ImageKind kind, double sigma);

}  // namespace tdenoise
