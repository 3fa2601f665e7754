#include "tdenoise/params.hpp"

#include <cmath>

#include "tdenoise/errors.hpp"

namespace tdenoise {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::mstsvd: return "mstsvd";
    case Method::cmstsvd: return "cmstsvd";
    case Method::twist: return "twist";
    case Method::hosvd4d: return "hosvd4d";
  }
  return "unknown";
}

std::string_view to_string(WeightMode m) {
  return m == WeightMode::uniform ? "uniform" : "sparsity";
}

Method parse_method(std::string_view name) {
  if (name == "mstsvd") return Method::mstsvd;
  if (name == "cmstsvd") return Method::cmstsvd;
  if (name == "twist") return Method::twist;
  if (name == "hosvd4d") return Method::hosvd4d;
  throw ArgumentError("unknown method '" + std::string(name) +
                      "' (expected mstsvd, cmstsvd, twist or hosvd4d)");
}

WeightMode parse_weight_mode(std::string_view name) {
  if (name == "uniform") return WeightMode::uniform;
  if (name == "sparsity") return WeightMode::sparsity;
  throw ArgumentError("unknown weight mode '" + std::string(name) + "'");
}

double compute_tau(double sigma, double gamma, std::size_t n_elem) {
  if (sigma < 0.0) throw ArgumentError("compute_tau: sigma must be non-negative");
  if (n_elem < 2) throw ArgumentError("compute_tau: n_elem must be at least 2");
  return gamma * sigma * std::sqrt(2.0 * std::log(static_cast<double>(n_elem)));
}

double FilterParams::tau(std::size_t channels) const {
  if (tau_override) return *tau_override;
  return compute_tau(sigma, gamma, group_elements(channels));
}

void FilterParams::validate() const {
  if (patch_size == 0) throw ArgumentError("patch size must be positive");
  if (group_size == 0) throw ArgumentError("group size K must be positive");
  if (step == 0) throw ArgumentError("grid step must be positive");
  if (threads == 0) throw ArgumentError("thread count must be positive");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw ArgumentError("sigma must be >= 0");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw ArgumentError("gamma must be >= 0");
  if (tau_override && !(*tau_override >= 0.0)) throw ArgumentError("tau must be >= 0");
  if (!(training_fraction > 0.0 && training_fraction <= 1.0)) {
    throw ArgumentError("training fraction must lie in (0, 1]");
  }
}

FilterParams default_params(Method method, ImageKind kind, double sigma) {
  FilterParams p;
  p.method = method;
  p.sigma = sigma;
  p.patch_size = 8;
  p.group_size = 30;
  p.step = 4;
  p.search_radius = kind == ImageKind::color ? 20 : 16;
  if (method == Method::hosvd4d) {
    p.gamma = kind == ImageKind::color ? 0.8 : 1.0;
  } else if (kind == ImageKind::color) {
    p.gamma = sigma < 30.0 ? 1.1 : 1.2;
  } else {
    p.gamma = 1.0;
  }
  return p;
}

}  // namespace tdenoise
