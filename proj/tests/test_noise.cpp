#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "tdenoise/errors.hpp"
#include "tdenoise/metrics.hpp"
#include "tdenoise/noise.hpp"
#include "tdenoise/random.hpp"

using namespace tdenoise;

namespace {

double band_std(const Image& a, const Image& b, std::size_t band) {
  const std::size_t n = a.extent(1) * a.extent(2);
  double s = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = b.data()[band * n + i] - a.data()[band * n + i];
    s += d;
    s2 += d * d;
  }
  const double mean = s / n;
  return std::sqrt(s2 / n - mean * mean);
}

}  // namespace

TEST(Random, CounterStreamIsPure) {
  EXPECT_EQ(standard_normal(3, 17), standard_normal(3, 17));
  EXPECT_NE(standard_normal(3, 17), standard_normal(4, 17));
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const double u = uniform01(9, i);
    EXPECT_GT(u, 0.0);
    EXPECT_LE(u, 1.0);
  }
}

TEST(Awgn, ZeroSigmaIsIdentity) {
  const Image img = test::random_tensor({8, 8, 3}, 1, 50.0, 100.0);
  EXPECT_EQ(add_awgn(img, 0.0, 5), img);
}

TEST(Awgn, EmpiricalStd) {
  const Image img({1000, 1000, 1}, 128.0);
  const Image noisy = add_awgn(img, 30.0, 42);
  const double s = band_std(img, noisy, 0);
  EXPECT_GE(s, 29.7);
  EXPECT_LE(s, 30.3);
  EXPECT_EQ(add_awgn(img, 30.0, 42), noisy);
  EXPECT_THROW(add_awgn(img, -1.0, 1), ArgumentError);
}

TEST(Awgn, NotClipped) {
  const Image img({64, 64, 1}, 0.0);
  const Image noisy = add_awgn(img, 10.0, 3);
  EXPECT_LT(*std::min_element(noisy.data().begin(), noisy.data().end()), 0.0);
}

TEST(Awgn, AnalyticPsnr) {
  const Image img({256, 256, 31}, 100.0);
  for (double sigma : {10.0, 30.0, 50.0, 100.0}) {
    EXPECT_NEAR(psnr(img, add_awgn(img, sigma, 1)), 20.0 * std::log10(255.0 / sigma), 0.05);
  }
}

TEST(Awgn, SeedsIndependent) {
  const Image img({256, 256, 1}, 0.0);
  const Image a = add_awgn(img, 1.0, 1);
  const Image b = add_awgn(img, 1.0, 2);
  double c = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) c += a.data()[i] * b.data()[i];
  EXPECT_LT(std::abs(c / a.size()), 0.01);
}

TEST(BandRamp, EqualEndsMatchAwgn) {
  const Image img = test::random_tensor({16, 16, 4}, 2, 10.0, 100.0);
  EXPECT_EQ(add_awgn_band_ramp(img, 20.0, 20.0, 9), add_awgn(img, 20.0, 9));
}

TEST(BandRamp, LinearSigmas) {
  const Image img({200, 200, 31}, 100.0);
  const Image noisy = add_awgn_band_ramp(img, 21.0, 51.0, 4);
  double mean_sigma = 0.0;
  for (std::size_t b = 0; b < 31; ++b) mean_sigma += 21.0 + 30.0 * b / 30.0;
  EXPECT_DOUBLE_EQ(mean_sigma / 31.0, 36.0);
  EXPECT_NEAR(band_std(img, noisy, 15), 36.0, 36.0 * 0.02);
  EXPECT_NEAR(band_std(img, noisy, 0), 21.0, 21.0 * 0.02);
  EXPECT_NEAR(band_std(img, noisy, 30), 51.0, 51.0 * 0.02);
  EXPECT_THROW(add_awgn_band_ramp(Image({4, 4, 1}), 1.0, 2.0, 1), ArgumentError);
  EXPECT_THROW(add_awgn_band_ramp(img, 5.0, 2.0, 1), ArgumentError);
}

TEST(Stripes, ZeroAmplitudeIsIdentity) {
  const Image img = test::random_tensor({8, 8, 5}, 3);
  const std::vector<std::size_t> bands{1, 3};
  EXPECT_EQ(add_stripes(img, bands, 0.0, 1), img);
}

TEST(Stripes, ColumnConstantOffsetsOnListedBands) {
  const Image img = test::random_tensor({12, 10, 5}, 4, 20.0, 100.0);
  const std::vector<std::size_t> bands{1, 3};
  const Image striped = add_stripes(img, bands, 25.0, 8);
  for (std::size_t b = 0; b < 5; ++b) {
    const bool listed = b == 1 || b == 3;
    for (std::size_t c = 0; c < 10; ++c) {
      const double offset = striped(0, c, b) - img(0, c, b);
      EXPECT_LE(std::abs(offset), 25.0);
      if (!listed) EXPECT_EQ(offset, 0.0);
      double mean_diff = 0.0;
      for (std::size_t r = 0; r < 12; ++r) {
        EXPECT_NEAR(striped(r, c, b) - img(r, c, b), offset, 1e-12);
        mean_diff += striped(r, c, b) - img(r, c, b);
      }
      EXPECT_NEAR(mean_diff / 12.0, offset, 1e-10);
    }
  }
  EXPECT_NE(striped(0, 0, 1) - img(0, 0, 1), striped(0, 1, 1) - img(0, 1, 1));
  const std::vector<std::size_t> bad{5};
  EXPECT_THROW(add_stripes(img, bad, 1.0, 1), ArgumentError);
}
