#include "tdenoise/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <utility>

#include "parallel.hpp"
#include "tdenoise/filter.hpp"

namespace tdenoise {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Filtered {
  RealTensor data;
  std::size_t n_retained;
};

void check_image(const Image& img, const FilterParams& params) {
  params.validate();
  if (img.order() != 3) throw ArgumentError("expected an H x W x C image");
  if (img.extent(1) < params.patch_size || img.extent(2) < params.patch_size) {
    throw ArgumentError("image is smaller than the patch size");
  }
}

struct WorkerState {
  Aggregator aggregator;
  StageTimes times;
  double retained = 0.0;
  std::size_t groups = 0;
};

// Stages 2-4 over the reference grid. `filter(group, times)` returns the
// filtered group and its retained-coefficient count.
template <typename FilterGroup>
DenoiseResult run_grouped(const Image& img, const FilterParams& params, MatchMetric metric,
                          std::string method, double tau, double training_seconds,
                          Clock::time_point start, FilterGroup&& filter) {
  const std::size_t h = img.extent(1);
  const std::size_t w = img.extent(2);
  const std::size_t channels = img.extent(3);
  const PatchGrid grid = reference_grid(h, w, params.patch_size, params.step);
  const BlockMatcher matcher(img, params.patch_size, params.search_radius, params.group_size,
                             metric);
  const double n_elem = static_cast<double>(params.group_elements(channels));

  const std::size_t workers = std::clamp<std::size_t>(params.threads, 1, grid.size());
  std::vector<WorkerState> states;
  states.reserve(workers);
  for (std::size_t i = 0; i < workers; ++i) states.push_back({Aggregator(h, w, channels), {}, 0.0, 0});

  detail::run_workers(workers, [&](std::size_t worker) {
    WorkerState& state = states[worker];
    std::vector<Position> coords;
    const auto [begin, end] = detail::split_range(grid.size(), workers, worker);
    for (std::size_t i = begin; i < end; ++i) {
      auto t0 = Clock::now();
      matcher.match(grid.at(i), coords);
      const RealTensor group = extract_patches(img, coords, params.patch_size);
      state.times.grouping += seconds_since(t0);

      Filtered out = filter(group, state.times);

      t0 = Clock::now();
      const double weight = params.weight_mode == WeightMode::uniform
                                ? 1.0
                                : 1.0 / (1.0 + static_cast<double>(out.n_retained));
      state.aggregator.accumulate(coords, out.data, weight);
      state.times.aggregation += seconds_since(t0);
      state.retained += static_cast<double>(out.n_retained) / n_elem;
      ++state.groups;
    }
  });

  auto t0 = Clock::now();
  DenoiseReport report;
  report.method = std::move(method);
  report.params = params;
  report.tau = tau;
  report.stages.training = training_seconds;
  for (std::size_t i = 1; i < workers; ++i) states[0].aggregator.merge(states[i].aggregator);
  double retained = 0.0;
  for (const WorkerState& s : states) {
    report.stages.grouping += s.times.grouping;
    report.stages.pca += s.times.pca;
    report.stages.filtering += s.times.filtering;
    report.stages.aggregation += s.times.aggregation;
    report.groups += s.groups;
    retained += s.retained;
  }
  report.retained_fraction = report.groups ? retained / static_cast<double>(report.groups) : 0.0;
  Image result = states[0].aggregator.finalize();
  report.stages.aggregation += seconds_since(t0);
  report.seconds = seconds_since(start);
  return {std::move(result), std::move(report)};
}

DenoiseResult run_tsvd(const Image& img, const FilterParams& params, const GlobalBasis* pretrained,
                       MatchMetric metric, PcaMode pca_mode, std::string method) {
  const auto start = Clock::now();
  const std::size_t channels = img.extent(3);
  GlobalBasis trained;
  const GlobalBasis* basis = pretrained;
  double training = 0.0;
  if (basis == nullptr) {
    trained = train_global_basis_for(img, params);
    basis = &trained;
    training = seconds_since(start);
  } else if (basis->patch_size != params.patch_size || basis->n_channels != channels) {
    throw ArgumentError("pretrained global basis does not match image and patch size");
  }
  const double tau = params.tau(channels);

  return run_grouped(img, params, metric, std::move(method), tau, training, start,
                     [&](const RealTensor& group, StageTimes& times) {
                       auto t0 = Clock::now();
                       const GroupBasis local = local_pca(group, pca_mode);
                       times.pca += seconds_since(t0);

                       t0 = Clock::now();
                       CoefficientTensor c = hard_threshold(forward(group, *basis, local), tau);
                       Filtered out{inverse(c, *basis, local), c.n_retained};
                       times.filtering += seconds_since(t0);
                       return out;
                     });
}

}  // namespace

GlobalBasis train_global_basis_for(const Image& img, const FilterParams& params) {
  check_image(img, params);
  const PatchGrid grid =
      reference_grid(img.extent(1), img.extent(2), params.patch_size, params.step);
  return train_global_basis(img, grid, params.threads, params.training_fraction,
                            params.training_seed);
}

DenoiseResult denoise_mstsvd(const Image& img, const FilterParams& params,
                             const GlobalBasis* pretrained) {
  check_image(img, params);
  return run_tsvd(img, params, pretrained, MatchMetric::full, PcaMode::full, "mstsvd");
}

DenoiseResult denoise_cmstsvd(const Image& img, const FilterParams& params,
                              const GlobalBasis* pretrained) {
  check_image(img, params);
  if (img.extent(3) != 3) throw ArgumentError("CMSt-SVD requires exactly 3 channels");
  return run_tsvd(img, params, pretrained, MatchMetric::first_slice, PcaMode::first_slice,
                  "cmstsvd");
}

Image twist_axes(const Image& img) {
  if (img.order() != 3) throw ArgumentError("twist_axes expects an H x W x B cube");
  const std::size_t h = img.extent(1);
  const std::size_t w = img.extent(2);
  const std::size_t b = img.extent(3);
  Image out({b, h, w});
  for (std::size_t c = 0; c < w; ++c)
    for (std::size_t r = 0; r < h; ++r)
      for (std::size_t band = 0; band < b; ++band) out(band, r, c) = img(r, c, band);
  return out;
}

Image untwist_axes(const Image& twisted) {
  if (twisted.order() != 3) throw ArgumentError("untwist_axes expects a B x H x W cube");
  const std::size_t b = twisted.extent(1);
  const std::size_t h = twisted.extent(2);
  const std::size_t w = twisted.extent(3);
  Image out({h, w, b});
  for (std::size_t band = 0; band < b; ++band)
    for (std::size_t c = 0; c < w; ++c)
      for (std::size_t r = 0; r < h; ++r) out(r, c, band) = twisted(band, r, c);
  return out;
}

DenoiseResult denoise_twist(const Image& img, const FilterParams& params) {
  check_image(img, params);
  if (img.extent(3) < 2) throw ArgumentError("twist requires at least 2 bands");
  const auto start = Clock::now();
  const Image twisted = twist_axes(img);
  DenoiseResult result = denoise_mstsvd(twisted, params);
  result.image = untwist_axes(result.image);
  result.report.method = "twist";
  result.report.seconds = seconds_since(start);
  return result;
}

DenoiseResult denoise_hosvd4d(const Image& img, const FilterParams& params) {
  check_image(img, params);
  const auto start = Clock::now();
  const double tau = params.tau(img.extent(3));
  return run_grouped(img, params, MatchMetric::full, "hosvd4d", tau, 0.0, start,
                     [&](const RealTensor& group, StageTimes& times) {
                       auto t0 = Clock::now();
                       const HosvdBasis basis = hosvd_basis(group);
                       times.pca += seconds_since(t0);

                       t0 = Clock::now();
                       RealTensor core = hosvd_forward(group, basis);
                       const std::size_t kept = hard_threshold_in_place(core, tau);
                       Filtered out{hosvd_inverse(core, basis), kept};
                       times.filtering += seconds_since(t0);
                       return out;
                     });
}

DenoiseResult denoise(const Image& img, const FilterParams& params) {
  switch (params.method) {
    case Method::mstsvd: return denoise_mstsvd(img, params);
    case Method::cmstsvd: return denoise_cmstsvd(img, params);
    case Method::twist: return denoise_twist(img, params);
    case Method::hosvd4d: return denoise_hosvd4d(img, params);
  }
  throw ArgumentError("unknown method");
}

}  // namespace tdenoise
