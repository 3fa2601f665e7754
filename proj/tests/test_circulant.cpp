#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "tdenoise/circulant.hpp"
#include "tdenoise/dft.hpp"

using namespace tdenoise;

TEST(Bcirc, ScalarPatchIsCirculant) {
  const RealTensor p({1, 1, 3}, std::vector<double>{1, 2, 3});  // (a, b, c)
  EXPECT_EQ(bcirc_patch(p), Matrix<double>::from_rows({{1, 3, 2}, {2, 1, 3}, {3, 2, 1}}));
}

TEST(Bcirc, BlockLayout) {
  const RealTensor p = test::random_tensor({2, 3, 4}, 1);
  const Matrix<double> m = bcirc_patch(p);
  ASSERT_EQ(m.rows(), 8u);
  ASSERT_EQ(m.cols(), 12u);
  for (std::size_t br = 0; br < 4; ++br)
    for (std::size_t bc = 0; bc < 4; ++bc)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t i = 0; i < 2; ++i)
          EXPECT_EQ(m(br * 2 + i, bc * 3 + j), p(i, j, (br + 4 - bc) % 4));
}

TEST(Bcirc, NormIsSqrtNTimesPatchNorm) {
  // Each entry appears N times, hence sqrt(N).
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const RealTensor p = test::random_tensor({4, 4, 3}, seed);
    EXPECT_NEAR(frobenius_norm(bcirc_patch(p)), std::sqrt(3.0) * frobenius_norm(p), 1e-12 * frobenius_norm(p));
  }
}

TEST(Bcirc, GramIsBlockCirculant) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const RealTensor p = test::random_tensor({3, 2, 3}, seed);
    const Matrix<double> b = bcirc_patch(p);
    EXPECT_TRUE(is_block_circulant(b * b.transpose(), 3, 1e-12));
  }
  const Matrix<double> not_circ = test::random_matrix(6, 6, 5);
  EXPECT_FALSE(is_block_circulant(not_circ, 3, 1e-12));
}

TEST(Bcirc, GroupSlicesAreBcircOfPatches) {
  const RealTensor g = test::random_tensor({2, 2, 3, 4}, 3);
  const RealTensor b = bcirc_group(g);
  ASSERT_EQ(b.shape(), (Shape{6, 6, 4}));
  for (std::size_t k = 0; k < 4; ++k) {
    RealTensor p({2, 2, 3});
    for (std::size_t s = 0; s < 3; ++s)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t i = 0; i < 2; ++i) p(i, j, s) = g(i, j, s, k);
    const Matrix<double> m = bcirc_patch(p);
    for (std::size_t c = 0; c < 6; ++c)
      for (std::size_t r = 0; r < 6; ++r) EXPECT_EQ(b(r, c, k), m(r, c));
  }
}

TEST(BdiagFromBcirc, RandomPatchIdentity) {
  const RealTensor p = test::random_tensor({2, 2, 3}, 7);
  const Matrix<Complex> got = bdiag_from_bcirc(p);
  const Matrix<Complex> expected = block_diagonal(mode_product(to_complex(p), dft_pair(3).unnormalized, 3));
  EXPECT_LT(max_abs_difference(got, expected), 1e-10);
}

TEST(BdiagFromBcirc, ConstantPatchOnlyFirstBlock) {
  RealTensor p({2, 2, 3});
  for (std::size_t k = 0; k < 3; ++k) {
    p(0, 0, k) = 1;
    p(1, 0, k) = 2;
    p(0, 1, k) = 3;
    p(1, 1, k) = 4;
  }
  const Matrix<Complex> m = bdiag_from_bcirc(p);
  for (std::size_t c = 0; c < 6; ++c)
    for (std::size_t r = 0; r < 6; ++r) {
      if (r < 2 && c < 2) {
        EXPECT_NEAR(std::abs(m(r, c)), 3.0 * p(r, c, 0), 1e-12);
      } else {
        EXPECT_LT(std::abs(m(r, c)), 1e-12);
      }
    }
}

TEST(BdiagFromBcirc, ZeroPatch) {
  const Matrix<Complex> m = bdiag_from_bcirc(RealTensor({3, 3, 3}));
  for (const Complex& v : m.data()) EXPECT_EQ(std::abs(v), 0.0);
}

TEST(Kron, SmallExample) {
  const Matrix<Complex> a = to_complex(Matrix<double>::from_rows({{1, 2}, {3, 4}}));
  const Matrix<Complex> i2 = Matrix<Complex>::identity(2);
  const Matrix<Complex> k = kron(a, i2);
  EXPECT_EQ(k(0, 0), Complex(1));
  EXPECT_EQ(k(1, 1), Complex(1));
  EXPECT_EQ(k(0, 2), Complex(2));
  EXPECT_EQ(k(3, 1), Complex(3));
  EXPECT_EQ(k(2, 1), Complex(0));
}
