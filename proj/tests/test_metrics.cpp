#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "tdenoise/errors.hpp"
#include "tdenoise/metrics.hpp"

using namespace tdenoise;

namespace {

std::uint64_t scramble(std::uint64_t i, std::uint64_t j, std::uint64_t k, std::uint64_t seed) {
  constexpr std::uint64_t m = 0xFFFFFFFFu;
  std::uint64_t x = (i * 2654435761u + j * 40503u + k * 97u + seed * 1000003u) & m;
  x ^= x >> 13;
  x = (x * 1274126177u) & m;
  x ^= x >> 16;
  return x;
}

// Integer image pair; the expected SSIM values below were computed once with
// scikit-image (gaussian_weights, sigma 1.5, population covariance).
std::pair<Image, Image> ssim_pair(std::size_t h, std::size_t w, std::size_t c, std::uint64_t seed) {
  Image clean({h, w, c});
  Image test({h, w, c});
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < w; ++j)
      for (std::size_t k = 0; k < c; ++k) {
        const double v = static_cast<double>((3 * i + 2 * j + 40 * k) % 200 + scramble(i, j, k, seed) % 40);
        const double t = v + static_cast<double>(scramble(i, j, k, seed + 17) % 61) - 30.0;
        clean(i, j, k) = v;
        test(i, j, k) = std::clamp(t, 0.0, 255.0);
      }
  return {clean, test};
}

struct SsimCase {
  std::size_t h, w, c;
  std::uint64_t seed;
  double expected;
};

}  // namespace

TEST(Psnr, ConstantOffset) {
  const Image a({16, 16, 3}, 100.0);
  const Image b({16, 16, 3}, 110.0);
  EXPECT_NEAR(psnr(a, b), 28.13, 0.01);
  EXPECT_EQ(psnr(a, b), psnr(b, a));
  EXPECT_TRUE(std::isinf(psnr(a, a)));
  EXPECT_THROW(psnr(a, Image({16, 16, 1})), ArgumentError);
}

TEST(Ssim, IdenticalIsOne) {
  const Image a = test::random_tensor({20, 20, 3}, 1, 30.0, 120.0);
  EXPECT_NEAR(ssim(a, a), 1.0, 1e-12);
}

TEST(Ssim, LuminanceShiftPenalised) {
  const Image a = test::random_tensor({32, 32, 1}, 2, 20.0, 60.0);
  Image b = a;
  for (double& v : b.data()) v = std::min(255.0, v + 128.0);
  EXPECT_LT(ssim(a, b), 0.8);
  EXPECT_NEAR(ssim(a, b), ssim(b, a), 1e-12);
}

TEST(Ssim, MatchesReferenceImplementation) {
  const SsimCase cases[] = {{24, 24, 1, 1, 0.5548315967},
                            {32, 20, 3, 2, 0.5476095963},
                            {16, 40, 3, 3, 0.5748250387},
                            {40, 40, 3, 4, 0.5930004695},
                            {20, 28, 31, 5, 0.5957475654}};
  for (const SsimCase& c : cases) {
    const auto [clean, test] = ssim_pair(c.h, c.w, c.c, c.seed);
    EXPECT_NEAR(ssim(clean, test), c.expected, 1e-4) << c.h << "x" << c.w << "x" << c.c;
  }
}

TEST(Ssim, TooSmallRejected) { EXPECT_THROW(ssim(Image({10, 20, 1}), Image({10, 20, 1})), ArgumentError); }

TEST(Ergas, ClosedForm) {
  Image clean({8, 8, 4});
  for (std::size_t b = 0; b < 4; ++b)
    for (std::size_t i = 0; i < 64; ++i) clean.data()[64 * b + i] = 40.0 + 10.0 * b + (i % 7);
  EXPECT_EQ(ergas(clean, clean), 0.0);
  Image test = clean;
  double mu = 0.0;
  for (std::size_t i = 0; i < 64; ++i) {
    test.data()[128 + i] += 5.0;
    mu += clean.data()[128 + i];
  }
  mu /= 64.0;
  EXPECT_NEAR(ergas(clean, test), 100.0 * 5.0 / (mu * 2.0), 1e-12);
  Image c2 = clean, t2 = test;
  for (double& v : c2.data()) v *= 2.0;
  for (double& v : t2.data()) v *= 2.0;
  EXPECT_NEAR(ergas(c2, t2), ergas(clean, test), 1e-12);
  EXPECT_THROW(ergas(Image({4, 4, 2}), Image({4, 4, 2})), ArgumentError);
}

TEST(Sam, Angles) {
  const Image a = test::random_tensor({6, 6, 5}, 3, 10.0, 50.0);
  EXPECT_NEAR(sam(a, a), 0.0, 1e-7);
  Image twice = a;
  for (double& v : twice.data()) v *= 2.0;
  EXPECT_NEAR(sam(a, twice), 0.0, 1e-7);
  Image x({3, 3, 2});
  Image y({3, 3, 2});
  for (std::size_t i = 0; i < 9; ++i) {
    x.data()[i] = 1.0;
    y.data()[9 + i] = 1.0;
  }
  EXPECT_NEAR(sam(x, y), std::numbers::pi / 2, 1e-12);
  EXPECT_THROW(sam(Image({3, 3, 2}), Image({3, 3, 2})), ArgumentError);
}

TEST(Csv, ColumnOrderAndInf) {
  EXPECT_EQ(metrics_csv_header(), "method,sigma,psnr,ssim,ergas,sam,seconds");
  const Image a({16, 16, 3}, 50.0);
  const std::string row = metrics_csv_row("mstsvd", "30", evaluate(a, a), "0.5");
  EXPECT_EQ(row.rfind("mstsvd,30,inf,", 0), 0u) << row;
  EXPECT_EQ(format_psnr(INFINITY), "inf");
}
