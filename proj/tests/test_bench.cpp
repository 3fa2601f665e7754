#include <gtest/gtest.h>

#include "tdenoise/bench.hpp"
#include "tdenoise/errors.hpp"

using namespace tdenoise;

namespace {

std::size_t count_lines(const std::string& s, const std::string& prefix) {
  std::size_t n = 0;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const std::size_t end = s.find('\n', pos);
    if (s.compare(pos, prefix.size(), prefix) == 0) ++n;
    if (end == std::string::npos) break;
    pos = end + 1;
  }
  return n;
}

}  // namespace

TEST(BenchConfig, ParsesJson) {
  const BenchConfig cfg = BenchConfig::from_json(R"({
    "images": ["synthetic:color32", {"name": "cube", "path": "x.msi"}],
    "methods": ["mstsvd", "hosvd4d"], "sigmas": [10, 30], "seed": 3,
    "threads": 2, "gamma": 1.5, "timings": false, "output": "r.md"})");
  ASSERT_EQ(cfg.images.size(), 2u);
  EXPECT_EQ(cfg.images[0].source, "synthetic:color32");
  EXPECT_EQ(cfg.images[1].name, "cube");
  EXPECT_EQ(cfg.images[1].source, "x.msi");
  EXPECT_EQ(cfg.methods, (std::vector<Method>{Method::mstsvd, Method::hosvd4d}));
  EXPECT_EQ(cfg.sigmas, (std::vector<double>{10, 30}));
  EXPECT_EQ(cfg.seed, 3u);
  EXPECT_EQ(cfg.threads, 2u);
  EXPECT_EQ(cfg.gamma, 1.5);
  EXPECT_FALSE(cfg.timings);
  EXPECT_EQ(cfg.output, "r.md");
  EXPECT_THROW(BenchConfig::from_json("{"), ArgumentError);
  EXPECT_THROW(BenchConfig::from_json(R"({"methods": ["bm3d"]})"), ArgumentError);
  EXPECT_THROW(BenchConfig::from_json(R"({"sigmas": [-1]})"), ArgumentError);
}

TEST(BenchImages, SyntheticSources) {
  EXPECT_EQ(load_bench_image("synthetic:color32").shape(), (Shape{32, 32, 3}));
  EXPECT_EQ(load_bench_image("synthetic:msi24").shape(), (Shape{24, 24, 31}));
  EXPECT_EQ(load_bench_image("synthetic:msi24x5").shape(), (Shape{24, 24, 5}));
  EXPECT_THROW(load_bench_image("synthetic:bogus"), ArgumentError);
}

TEST(RunBench, EmptyMatrixGivesHeaderOnly) {
  BenchConfig cfg;
  cfg.timings = false;
  const BenchReport r = run_bench(cfg);
  EXPECT_TRUE(r.rows.empty());
  EXPECT_TRUE(r.aggregates.empty());
  EXPECT_EQ(r.csv(), "image,method,sigma,psnr,ssim,ergas,sam,seconds,status\n");
  EXPECT_NE(r.markdown().find("# Denoising benchmark"), std::string::npos);
}

TEST(RunBench, CountsRowsAndAggregates) {
  BenchConfig cfg;
  cfg.images = {{"c", "synthetic:color32"}};
  cfg.methods = {Method::mstsvd, Method::hosvd4d};
  cfg.sigmas = {10, 30};
  cfg.timings = false;
  const BenchReport r = run_bench(cfg);
  EXPECT_EQ(r.rows.size(), 4u);
  EXPECT_EQ(r.noisy.size(), 2u);
  ASSERT_EQ(r.aggregates.size(), 2u);
  EXPECT_EQ(r.aggregates[0].method, "mstsvd");
  EXPECT_EQ(r.aggregates[0].runs, 2u);
  for (const BenchRow& row : r.rows) {
    EXPECT_FALSE(row.failed) << row.error;
    EXPECT_GT(row.metrics.psnr, r.noisy[row.sigma == 10 ? 0 : 1].metrics.psnr);
  }
  EXPECT_EQ(count_lines(r.csv(), "c,"), 6u);
  EXPECT_NE(r.markdown().find("n/a"), std::string::npos);

  const BenchReport again = run_bench(cfg);
  EXPECT_EQ(again.markdown(), r.markdown());
  EXPECT_EQ(again.csv(), r.csv());
}

TEST(RunBench, FailedRunRecordedAndMatrixContinues) {
  BenchConfig cfg;
  cfg.images = {{"gray", "synthetic:msi24x2"}};
  cfg.methods = {Method::cmstsvd, Method::mstsvd};
  cfg.sigmas = {20};
  cfg.timings = false;
  const BenchReport r = run_bench(cfg);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_TRUE(r.rows[0].failed);
  EXPECT_FALSE(r.rows[0].error.empty());
  EXPECT_FALSE(r.rows[1].failed);
  EXPECT_NE(r.csv().find("failed"), std::string::npos);
}
