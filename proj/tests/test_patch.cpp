#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "support.hpp"
#include "tdenoise/errors.hpp"
#include "tdenoise/patch.hpp"
#include "tdenoise/synthetic.hpp"

using namespace tdenoise;

TEST(ReferenceGrid, Enumeration) {
  const PatchGrid g = reference_grid(16, 16, 8, 4);
  EXPECT_EQ(g.rows, (std::vector<std::size_t>{0, 4, 8}));
  EXPECT_EQ(g.cols, (std::vector<std::size_t>{0, 4, 8}));
  EXPECT_EQ(g.size(), 9u);
  EXPECT_EQ(g.at(4), (Position{4, 4}));
  EXPECT_EQ(g.at(5), (Position{4, 8}));
}

TEST(ReferenceGrid, ExactFitAndBorderInclusion) {
  EXPECT_EQ(reference_grid(8, 8, 8, 4).size(), 1u);
  EXPECT_EQ(reference_grid(9, 8, 8, 4).rows, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(reference_grid(20, 8, 8, 4).rows, (std::vector<std::size_t>{0, 4, 8, 12}));
  EXPECT_THROW(reference_grid(7, 8, 8, 4), ArgumentError);
  EXPECT_THROW(reference_grid(8, 8, 8, 0), ArgumentError);
}

TEST(ReferenceGrid, EveryPixelCovered) {
  for (std::size_t h : {8u, 9u, 13u, 31u})
    for (std::size_t w : {8u, 10u, 17u})
      for (std::size_t step : {1u, 3u, 4u, 8u}) {
        const PatchGrid g = reference_grid(h, w, 8, step);
        std::vector<int> hit(h * w, 0);
        for (const Position p : g.positions())
          for (std::size_t c = 0; c < 8; ++c)
            for (std::size_t r = 0; r < 8; ++r) hit[p.row + r + h * (p.col + c)] = 1;
        EXPECT_EQ(std::count(hit.begin(), hit.end(), 0), 0) << h << "x" << w << " step " << step;
      }
}

TEST(BlockMatcher, ReferenceFirstAtDistanceZero) {
  const Image img = test::random_tensor({32, 32, 3}, 1, 30.0, 100.0);
  const BlockMatcher m(img, 8, 5, 10, MatchMetric::full);
  std::vector<Position> out;
  EXPECT_EQ(m.match({12, 12}, out), 0u);
  ASSERT_EQ(out.size(), 10u);
  EXPECT_EQ(out[0], (Position{12, 12}));
  EXPECT_EQ(m.distance(out[0], {12, 12}), 0.0);
  for (std::size_t i = 2; i < out.size(); ++i) {
    EXPECT_LE(m.distance({12, 12}, out[i - 1]), m.distance({12, 12}, out[i]));
  }
  const std::set<Position> unique(out.begin(), out.end());
  EXPECT_EQ(unique.size(), out.size());
}

TEST(BlockMatcher, BruteForceSelection) {
  const Image img = test::random_tensor({24, 20, 3}, 2, 30.0, 100.0);
  const BlockMatcher m(img, 4, 3, 6, MatchMetric::full);
  const Position ref{10, 7};
  std::vector<std::tuple<double, std::size_t, std::size_t>> all;
  for (std::size_t r = 7; r <= 13; ++r)
    for (std::size_t c = 4; c <= 10; ++c)
      if (!(r == ref.row && c == ref.col)) all.emplace_back(m.distance(ref, {r, c}), r, c);
  std::sort(all.begin(), all.end());
  std::vector<Position> out;
  m.match(ref, out);
  for (std::size_t i = 1; i < 6; ++i) {
    EXPECT_EQ(out[i], (Position{std::get<1>(all[i - 1]), std::get<2>(all[i - 1])}));
  }
}

TEST(BlockMatcher, ConstantImageTieBreak) {
  const Image img({20, 20, 3}, 50.0);
  const BlockMatcher m(img, 4, 2, 5, MatchMetric::full);
  std::vector<Position> out;
  m.match({8, 8}, out);
  const std::vector<Position> expected{{8, 8}, {6, 6}, {6, 7}, {6, 8}, {6, 9}};
  EXPECT_EQ(out, expected);
}

TEST(BlockMatcher, PadsSmallWindowsWithReference) {
  const Image img = test::random_tensor({8, 8, 1}, 3);
  const BlockMatcher m(img, 8, 4, 5, MatchMetric::full);
  std::vector<Position> out;
  EXPECT_EQ(m.match({0, 0}, out), 4u);
  EXPECT_EQ(out, std::vector<Position>(5, Position{0, 0}));
}

TEST(BlockMatcher, WindowClippedAtBorders) {
  const Image img = test::random_tensor({16, 16, 1}, 4);
  const BlockMatcher m(img, 4, 2, 9, MatchMetric::full);
  std::vector<Position> out;
  EXPECT_EQ(m.match({0, 0}, out), 0u);
  for (const Position p : out) {
    EXPECT_LE(p.row, 2u);
    EXPECT_LE(p.col, 2u);
  }
}

TEST(BlockMatcher, GrayImageMetricsAgree) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Image img = synthetic::gray_color_scene(48, seed);
    const BlockMatcher full(img, 8, 10, 16, MatchMetric::full);
    const BlockMatcher first(img, 8, 10, 16, MatchMetric::first_slice);
    std::vector<Position> a, b;
    for (const Position ref : {Position{0, 0}, Position{20, 12}, Position{40, 40}}) {
      full.match(ref, a);
      first.match(ref, b);
      EXPECT_EQ(a, b);
      EXPECT_EQ(full.distance(ref, {3, 5}), first.distance(ref, {3, 5}));
    }
  }
}

TEST(BlockMatcher, FirstSliceUsesChannelSum) {
  Image img({8, 8, 3});
  for (std::size_t c = 0; c < 8; ++c)
    for (std::size_t r = 0; r < 8; ++r) {
      img(r, c, 0) = 10.0 * (c >= 4);
      img(r, c, 1) = -10.0 * (c >= 4);  // cancels in the sum
    }
  const BlockMatcher first(img, 4, 4, 2, MatchMetric::first_slice);
  const BlockMatcher full(img, 4, 4, 2, MatchMetric::full);
  EXPECT_EQ(first.distance({0, 0}, {0, 4}), 0.0);
  EXPECT_GT(full.distance({0, 0}, {0, 4}), 0.0);
}

TEST(MatchBlock, GroupHoldsExtractedPatches) {
  const Image img = test::random_tensor({20, 20, 3}, 5);
  FilterParams p;
  p.patch_size = 4;
  p.group_size = 3;
  p.search_radius = 4;
  const PatchGroup g = match_block(img, {8, 8}, p, MatchMetric::full);
  ASSERT_EQ(g.data.shape(), (Shape{4, 4, 3, 3}));
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t ch = 0; ch < 3; ++ch)
      for (std::size_t c = 0; c < 4; ++c)
        for (std::size_t r = 0; r < 4; ++r)
          EXPECT_EQ(g.data(r, c, ch, k), img(g.coords[k].row + r, g.coords[k].col + c, ch));
}

TEST(Aggregator, SinglePatch) {
  Aggregator agg(6, 6, 1);
  RealTensor patch({2, 2, 1, 1}, std::vector<double>{1, 2, 3, 4});
  const std::vector<Position> coords{{1, 3}};
  agg.accumulate(coords, patch, 1.0);
  const RealTensor& w = agg.weight();
  EXPECT_EQ(w(1, 3, 0), 1.0);
  EXPECT_EQ(w(0, 0, 0), 0.0);
  EXPECT_THROW(agg.finalize(), InvariantError);
}

TEST(Aggregator, OverlapAverages) {
  Aggregator agg(2, 3, 1);
  const std::vector<Position> a{{0, 0}};
  const std::vector<Position> b{{0, 1}};
  agg.accumulate(a, RealTensor({2, 2, 1, 1}, 2.0), 1.0);
  agg.accumulate(b, RealTensor({2, 2, 1, 1}, 6.0), 1.0);
  const Image out = agg.finalize();
  for (std::size_t r = 0; r < 2; ++r) {
    EXPECT_EQ(out(r, 0, 0), 2.0);
    EXPECT_EQ(out(r, 1, 0), 4.0);
    EXPECT_EQ(out(r, 2, 0), 6.0);
  }
}

TEST(Aggregator, IdenticalOverlapUnchangedAndWeightScaleInvariant) {
  Aggregator once(2, 3, 1);
  Aggregator doubled(2, 3, 1);
  const RealTensor patch({2, 2, 1, 1}, std::vector<double>{5, 5, 5, 5});
  for (std::size_t col : {0u, 1u}) {
    const std::vector<Position> c{{0, col}};
    once.accumulate(c, patch, 0.5);
    doubled.accumulate(c, patch, 1.0);
  }
  const Image a = once.finalize();
  EXPECT_EQ(a, Image({2, 3, 1}, 5.0));
  EXPECT_EQ(doubled.finalize(), a);
}

TEST(Aggregator, SparsityWeight) {
  Aggregator agg(2, 2, 1);
  PatchGroup g;
  g.data = RealTensor({2, 2, 1, 1}, 3.0);
  g.coords = {{0, 0}};
  agg.accumulate(g, WeightMode::sparsity, 3);
  EXPECT_EQ(agg.weight()(0, 0, 0), 0.25);
  EXPECT_EQ(agg.numerator()(1, 1, 0), 0.75);
  EXPECT_EQ(agg.finalize(), Image({2, 2, 1}, 3.0));
}

TEST(Aggregator, MergeAddsSums) {
  Aggregator a(2, 2, 1);
  Aggregator b(2, 2, 1);
  const std::vector<Position> c{{0, 0}};
  a.accumulate(c, RealTensor({2, 2, 1, 1}, 2.0), 1.0);
  b.accumulate(c, RealTensor({2, 2, 1, 1}, 4.0), 1.0);
  a.merge(b);
  EXPECT_EQ(a.finalize(), Image({2, 2, 1}, 3.0));
  EXPECT_THROW(a.merge(Aggregator(3, 3, 1)), ArgumentError);
}

TEST(Aggregator, IdentityCoverageReconstructsImage) {
  const Image img = test::random_tensor({13, 11, 2}, 6, 20.0, 100.0);
  const PatchGrid grid = reference_grid(13, 11, 4, 3);
  Aggregator agg(13, 11, 2);
  for (const Position p : grid.positions()) {
    const std::vector<Position> c{p};
    agg.accumulate(c, extract_patches(img, c, 4), 1.0);
  }
  EXPECT_LT(max_abs_difference(agg.finalize(), img), 1e-10);
}
