#include <benchmark/benchmark.h>

#include "tdenoise/eig.hpp"
#include "tdenoise/filter.hpp"
#include "tdenoise/noise.hpp"
#include "tdenoise/patch.hpp"
#include "tdenoise/pipeline.hpp"
#include "tdenoise/random.hpp"
#include "tdenoise/synthetic.hpp"
#include "tdenoise/transforms.hpp"

using namespace tdenoise;

namespace {

const Image& noisy_color() {
  static const Image img = add_awgn(synthetic::color_scene(256, 3), 30.0, 5);
  return img;
}

RealTensor sample_group(std::size_t channels) {
  const Image img = add_awgn(synthetic::msi_cube(64, 64, channels, 2), 20.0, 1);
  FilterParams p;
  return match_block(img, {20, 20}, p, MatchMetric::full).data;
}

void BM_Match(benchmark::State& state) {
  const auto metric = state.range(0) ? MatchMetric::first_slice : MatchMetric::full;
  const BlockMatcher matcher(noisy_color(), 8, 20, 30, metric);
  std::vector<Position> out;
  for (auto _ : state) {
    matcher.match({120, 120}, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetLabel(state.range(0) ? "first_slice" : "full");
}
BENCHMARK(BM_Match)->Arg(0)->Arg(1);

void BM_LocalPca(benchmark::State& state) {
  const RealTensor g = sample_group(3);
  const auto mode = state.range(0) ? PcaMode::first_slice : PcaMode::full;
  for (auto _ : state) benchmark::DoNotOptimize(local_pca(g, mode));
  state.SetLabel(state.range(0) ? "first_slice" : "full");
}
BENCHMARK(BM_LocalPca)->Arg(0)->Arg(1);

void BM_SymmetricEig(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Matrix<double> x(n, n + 8);
  for (std::size_t i = 0; i < x.size(); ++i) x.data()[i] = standard_normal(3, i);
  const Matrix<double> gram = x * x.transpose();
  for (auto _ : state) benchmark::DoNotOptimize(symmetric_eig(gram));
}
BENCHMARK(BM_SymmetricEig)->Arg(8)->Arg(30)->Arg(64);

void BM_ForwardInverse(benchmark::State& state) {
  const auto channels = static_cast<std::size_t>(state.range(0));
  const RealTensor g = sample_group(channels);
  std::vector<RealTensor> patches;
  for (std::size_t k = 0; k < 30; ++k) {
    RealTensor p({8, 8, channels});
    std::copy_n(g.data().begin() + k * 64 * channels, 64 * channels, p.data().begin());
    patches.push_back(std::move(p));
  }
  const GlobalBasis gb = train_global_basis(patches);
  const GroupBasis ub = local_pca(g, PcaMode::full);
  const double tau = compute_tau(20.0, 1.0, g.size());
  for (auto _ : state) {
    benchmark::DoNotOptimize(inverse(hard_threshold(forward(g, gb, ub), tau), gb, ub));
  }
}
BENCHMARK(BM_ForwardInverse)->Arg(3)->Arg(31);

void BM_HosvdGroup(benchmark::State& state) {
  const RealTensor g = sample_group(3);
  for (auto _ : state) {
    const HosvdBasis b = hosvd_basis(g);
    RealTensor core = hosvd_forward(g, b);
    hard_threshold_in_place(core, 50.0);
    benchmark::DoNotOptimize(hosvd_inverse(core, b));
  }
}
BENCHMARK(BM_HosvdGroup);

void BM_Pipeline(benchmark::State& state) {
  const auto method = static_cast<Method>(state.range(0));
  const Image img = add_awgn(synthetic::color_scene(64, 4), 25.0, 2);
  FilterParams p = default_params(method, ImageKind::color, 25.0);
  p.method = method;
  for (auto _ : state) benchmark::DoNotOptimize(denoise(img, p));
  state.SetLabel(std::string(to_string(method)));
}
BENCHMARK(BM_Pipeline)
    ->Arg(static_cast<int>(Method::mstsvd))
    ->Arg(static_cast<int>(Method::cmstsvd))
    ->Arg(static_cast<int>(Method::hosvd4d))
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
