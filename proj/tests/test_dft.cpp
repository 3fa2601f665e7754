#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "tdenoise/dft.hpp"

using namespace tdenoise;

TEST(Dft, ThreePointMatchesPublishedMatrix) {
  const DftPair d = dft_pair(3);
  const double s = std::sqrt(3.0);
  const Complex expected[3][3] = {
      {{1, 0}, {1, 0}, {1, 0}},
      {{1, 0}, {-0.5, -0.8660}, {-0.5, 0.8660}},
      {{1, 0}, {-0.5, 0.8660}, {-0.5, -0.8660}},
  };
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) {
      EXPECT_NEAR(std::abs(s * d.unitary(r, c) - expected[r][c]), 0.0, 1e-4) << r << "," << c;
      EXPECT_NEAR(std::abs(d.unnormalized(r, c) - expected[r][c]), 0.0, 1e-4);
    }
}

TEST(Dft, SizeOne) {
  const DftPair d = dft_pair(1);
  ASSERT_EQ(d.unitary.rows(), 1u);
  EXPECT_EQ(d.unitary(0, 0), Complex(1, 0));
}

TEST(Dft, UnitaryAt31) {
  const DftPair d = dft_pair(31);
  const Matrix<Complex> p = d.unitary * d.unitary.adjoint();
  EXPECT_LT(max_abs_difference(p, Matrix<Complex>::identity(31)), 1e-12);
}

TEST(Dft, MirrorRowsAreExactConjugates) {
  for (std::size_t n : {2u, 3u, 8u, 31u}) {
    const DftPair d = dft_pair(n);
    for (std::size_t j = 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) EXPECT_EQ(d.unitary(n - j, k), std::conj(d.unitary(j, k)));
  }
}

TEST(Dft, ConstantAlongChannelsConcentratesInSliceZero) {
  RealTensor t({4, 5, 3});
  for (std::size_t c = 0; c < 5; ++c)
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t k = 0; k < 3; ++k) t(r, c, k) = 10.0 * r + c;
  const ComplexTensor f = fft_mode3(t);
  for (std::size_t c = 0; c < 5; ++c)
    for (std::size_t r = 0; r < 4; ++r) {
      EXPECT_NEAR(f(r, c, 0).real(), std::sqrt(3.0) * t(r, c, 0), 1e-12);
      EXPECT_LT(std::abs(f(r, c, 1)), 1e-12);
      EXPECT_LT(std::abs(f(r, c, 2)), 1e-12);
    }
}

TEST(Dft, RealPatchSpectrumIsConjugateSymmetric) {
  const RealTensor t = test::random_tensor({8, 8, 3}, 21);
  const ComplexTensor f = fft_mode3(t);
  // Direct matrix multiply as the reference.
  const DftPair d = dft_pair(3);
  for (std::size_t c = 0; c < 8; ++c)
    for (std::size_t r = 0; r < 8; ++r) {
      EXPECT_EQ(f(r, c, 2), std::conj(f(r, c, 1)));
      Complex direct = 0.0;
      for (std::size_t k = 0; k < 3; ++k) direct += d.unitary(1, k) * t(r, c, k);
      EXPECT_LT(std::abs(direct - f(r, c, 1)), 1e-12);
    }
}

TEST(Dft, UnitaryNormAndInverse) {
  const RealTensor t = test::random_tensor({5, 6, 31}, 22);
  const ComplexTensor f = fft_mode3(t);
  EXPECT_NEAR(frobenius_norm(f), frobenius_norm(t), 1e-10 * frobenius_norm(t));
  const ComplexTensor back = ifft_mode3(f);
  EXPECT_LT(max_abs_difference(back, to_complex(t)), 1e-12);
}

TEST(Dft, RetainedSlices) {
  EXPECT_EQ(retained_slices(3), 2u);
  EXPECT_EQ(retained_slices(31), 16u);
  EXPECT_EQ(retained_slices(4), 3u);
  EXPECT_EQ(slice_multiplicity(0, 4), 1u);
  EXPECT_EQ(slice_multiplicity(1, 4), 2u);
  EXPECT_EQ(slice_multiplicity(2, 4), 1u);
  EXPECT_EQ(slice_multiplicity(1, 3), 2u);
}
