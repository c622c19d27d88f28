#pragma once

#include <span>
#include <vector>

#include "pfake/image.hpp"

namespace pfake {

/// Sampled Gaussian with taps [-radius, radius], normalized to sum 1.
std::vector<double> gaussian_kernel(int radius, double sigma);

/// Sigma implied by an odd kernel size: 0.3 * ((k - 1) / 2 - 1) + 0.8.
double sigma_for_kernel_size(int ksize);

/// Separable convolution with edge replication; `kernel` has odd length.
FloatImage convolve_separable(const FloatImage& image, std::span<const double> kernel);

/// Gaussian blur with radius ceil(3 sigma).
FloatImage gaussian_blur(const FloatImage& image, double sigma);
/// Gaussian blur with an explicit odd kernel size (radius (k - 1) / 2).
FloatImage gaussian_blur_ksize(const FloatImage& image, int ksize);
/// Per-channel Gaussian blur of an 8-bit frame, rounded back to 8 bits.
Frame gaussian_blur_ksize(const Frame& frame, int ksize);

/// Bilinear sample at (row, col) with coordinates clamped to the image.
double sample_bilinear(const FloatImage& image, double row, double col) noexcept;

/// Bilinear resize using pixel-center alignment.
FloatImage resize_bilinear(const FloatImage& image, int height, int width);
Frame resize_bilinear(const Frame& frame, int height, int width);

/// Mean absolute response of the 4-neighbour Laplacian over interior pixels.
double laplacian_energy(const FloatImage& image);

}  // namespace pfake
