#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "pfake/dct.hpp"
#include "pfake/filters.hpp"
#include "pfake/random.hpp"
#include "support/oracles.hpp"

namespace pfake {
namespace {

FloatImage random_plane(int h, int w, std::uint64_t seed, double lo = 0.0, double hi = 1.0) {
  RandomStream rng(seed);
  FloatImage img(h, w);
  for (double& v : img.data()) v = rng.uniform(lo, hi);
  return img;
}

double max_abs_diff(const FloatImage& a, const FloatImage& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

TEST(GaussianKernel, NormalizedAndSymmetric) {
  for (double sigma : {0.5, 0.8, 1.1, 2.0, 4.0, 7.3}) {
    const int radius = static_cast<int>(std::ceil(3 * sigma));
    const auto k = gaussian_kernel(radius, sigma);
    ASSERT_EQ(k.size(), static_cast<std::size_t>(2 * radius + 1));
    EXPECT_NEAR(std::accumulate(k.begin(), k.end(), 0.0), 1.0, 1e-12);
    for (int i = 0; i < radius; ++i) EXPECT_DOUBLE_EQ(k[i], k[k.size() - 1 - i]);
    const auto ref = oracle::gaussian_taps(radius, sigma);
    for (std::size_t i = 0; i < k.size(); ++i) EXPECT_NEAR(k[i], ref[i], 1e-15);
  }
}

TEST(GaussianKernel, SigmaForKernelSize) {
  EXPECT_DOUBLE_EQ(sigma_for_kernel_size(3), 0.8);
  EXPECT_NEAR(sigma_for_kernel_size(5), 1.1, 1e-15);
  EXPECT_NEAR(sigma_for_kernel_size(11), 2.0, 1e-15);
}

TEST(GaussianBlur, ConstantImageUnchanged) {
  const FloatImage c(17, 23, 0.37);
  for (double sigma : {0.8, 3.0, 8.0}) {
    const FloatImage b = gaussian_blur(c, sigma);
    double sum = 0;
    for (double v : b.data()) sum += v;
    EXPECT_NEAR(sum, 0.37 * 17 * 23, 1e-10);
    for (double v : b.data()) EXPECT_NEAR(v, 0.37, 1e-15);
  }
}

TEST(GaussianBlur, MatchesDirectTwoDimensionalConvolution) {
  const FloatImage img = random_plane(13, 19, 4);
  for (double sigma : {0.8, 1.7, 4.0}) {
    const int radius = static_cast<int>(std::ceil(3 * sigma));
    EXPECT_LT(max_abs_diff(gaussian_blur(img, sigma), oracle::blur_2d(img, radius, sigma)), 1e-12);
  }
  for (int k : {3, 5, 11}) {
    EXPECT_LT(max_abs_diff(gaussian_blur_ksize(img, k), oracle::blur_2d(img, (k - 1) / 2, sigma_for_kernel_size(k))),
              1e-12);
  }
}

TEST(GaussianBlur, RejectsEvenKernel) { EXPECT_THROW(gaussian_blur_ksize(FloatImage(4, 4), 4), Error); }

TEST(Resize, SameSizeIsIdentityAndConstantsPreserved) {
  const FloatImage img = random_plane(9, 11, 8);
  EXPECT_LT(max_abs_diff(resize_bilinear(img, 9, 11), img), 1e-15);
  const FloatImage up = resize_bilinear(FloatImage(5, 5, 2.5), 12, 7);
  for (double v : up.data()) EXPECT_NEAR(v, 2.5, 1e-12);
}

TEST(Resize, HalfPixelCentres) {
  FloatImage row(1, 2);
  row(0, 0) = 0;
  row(0, 1) = 4;
  const FloatImage up = resize_bilinear(row, 1, 4);
  EXPECT_DOUBLE_EQ(up(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(up(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(up(0, 2), 3.0);
  EXPECT_DOUBLE_EQ(up(0, 3), 4.0);
}

TEST(SampleBilinear, ClampsOutside) {
  FloatImage img(2, 2);
  img(0, 0) = 1;
  img(1, 1) = 5;
  EXPECT_DOUBLE_EQ(sample_bilinear(img, -3, -3), 1.0);
  EXPECT_DOUBLE_EQ(sample_bilinear(img, 9, 9), 5.0);
  EXPECT_DOUBLE_EQ(sample_bilinear(img, 0.5, 0.5), 1.5);
}

TEST(LaplacianEnergy, ZeroOnAffineRamp) {
  FloatImage img(6, 6);
  for (int y = 0; y < 6; ++y)
    for (int x = 0; x < 6; ++x) img(y, x) = 3.0 * x - 2.0 * y;
  EXPECT_NEAR(laplacian_energy(img), 0.0, 1e-12);
}

TEST(Dct, MatchesDirectDefinition) {
  for (auto [h, w] : {std::pair{8, 8}, std::pair{5, 7}, std::pair{1, 6}, std::pair{16, 3}}) {
    const FloatImage x = random_plane(h, w, static_cast<std::uint64_t>(h * 100 + w), -1, 1);
    EXPECT_LT(max_abs_diff(dct2(x), oracle::dct2(x)), 1e-9);
    EXPECT_LT(max_abs_diff(idct2(x), oracle::idct2(x)), 1e-9);
  }
}

TEST(Dct, RoundTripAndParseval) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const FloatImage x = random_plane(8, 8, seed);
    const FloatImage X = dct2(x);
    EXPECT_LT(max_abs_diff(idct2(X), x), 1e-12);
    double ex = 0, eX = 0;
    for (double v : x.data()) ex += v * v;
    for (double v : X.data()) eX += v * v;
    EXPECT_NEAR(ex, eX, 1e-10);
  }
}

TEST(Dct, ConstantBlockHasOnlyDc) {
  const FloatImage X = dct2(FloatImage(4, 4, 1.0));
  EXPECT_NEAR(X(0, 0), 4.0, 1e-12);
  for (std::size_t i = 1; i < X.data().size(); ++i) EXPECT_NEAR(X.data()[i], 0.0, 1e-12);
}

TEST(Dct, FullFrameRoundTrip) {
  const FloatImage x = random_plane(299, 299, 5);
  EXPECT_LT(max_abs_diff(idct2(dct2(x)), x), 1e-9);
}

}  // namespace
}  // namespace pfake
