#include "pfake/filters.hpp"

#include <algorithm>
#include <cmath>

namespace pfake {

std::vector<double> gaussian_kernel(int radius, double sigma) {
  if (radius < 0 || !(sigma > 0.0)) {
    fail(ErrorCode::InvalidArgument, "gaussian kernel needs radius >= 0 and sigma > 0");
  }
  std::vector<double> k(2 * radius + 1);
  const double denom = 2.0 * sigma * sigma;
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    k[i + radius] = std::exp(-(i * i) / denom);
    sum += k[i + radius];
  }
  for (double& v : k) v /= sum;
  return k;
}

double sigma_for_kernel_size(int ksize) {
  if (ksize < 1 || ksize % 2 == 0) {
    fail(ErrorCode::InvalidArgument, "kernel size must be odd and positive");
  }
  return 0.3 * ((ksize - 1) * 0.5 - 1.0) + 0.8;
}

FloatImage convolve_separable(const FloatImage& image, std::span<const double> kernel) {
  const int h = image.height();
  const int w = image.width();
  const int r = static_cast<int>(kernel.size() / 2);
  FloatImage tmp(h, w);
  FloatImage out(h, w);

  std::vector<double> line(std::max(h, w) + 2 * r);
  for (int y = 0; y < h; ++y) {
    for (int x = -r; x < w + r; ++x) line[x + r] = image(y, std::clamp(x, 0, w - 1));
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int k = 0; k <= 2 * r; ++k) acc += kernel[k] * line[x + k];
      tmp(y, x) = acc;
    }
  }
  for (int x = 0; x < w; ++x) {
    for (int y = -r; y < h + r; ++y) line[y + r] = tmp(std::clamp(y, 0, h - 1), x);
    for (int y = 0; y < h; ++y) {
      double acc = 0.0;
      for (int k = 0; k <= 2 * r; ++k) acc += kernel[k] * line[y + k];
      out(y, x) = acc;
    }
  }
  return out;
}

FloatImage gaussian_blur(const FloatImage& image, double sigma) {
  const auto kernel = gaussian_kernel(static_cast<int>(std::ceil(3.0 * sigma)), sigma);
  return convolve_separable(image, kernel);
}

FloatImage gaussian_blur_ksize(const FloatImage& image, int ksize) {
  const auto kernel = gaussian_kernel((ksize - 1) / 2, sigma_for_kernel_size(ksize));
  return convolve_separable(image, kernel);
}

Frame gaussian_blur_ksize(const Frame& frame, int ksize) {
  auto planes = split_channels(frame);
  for (auto& p : planes) p = gaussian_blur_ksize(p, ksize);
  return merge_channels(planes);
}

double sample_bilinear(const FloatImage& image, double row, double col) noexcept {
  const int h = image.height();
  const int w = image.width();
  row = std::clamp(row, 0.0, static_cast<double>(h - 1));
  col = std::clamp(col, 0.0, static_cast<double>(w - 1));
  const int r0 = static_cast<int>(row);
  const int c0 = static_cast<int>(col);
  const int r1 = std::min(r0 + 1, h - 1);
  const int c1 = std::min(c0 + 1, w - 1);
  const double fr = row - r0;
  const double fc = col - c0;
  const double top = image(r0, c0) * (1.0 - fc) + image(r0, c1) * fc;
  const double bottom = image(r1, c0) * (1.0 - fc) + image(r1, c1) * fc;
  return top * (1.0 - fr) + bottom * fr;
}

FloatImage resize_bilinear(const FloatImage& image, int height, int width) {
  FloatImage out(height, width);
  const double sy = static_cast<double>(image.height()) / height;
  const double sx = static_cast<double>(image.width()) / width;
  for (int y = 0; y < height; ++y) {
    const double src_y = (y + 0.5) * sy - 0.5;
    for (int x = 0; x < width; ++x) {
      out(y, x) = sample_bilinear(image, src_y, (x + 0.5) * sx - 0.5);
    }
  }
  return out;
}

Frame resize_bilinear(const Frame& frame, int height, int width) {
  auto planes = split_channels(frame);
  for (auto& p : planes) p = resize_bilinear(p, height, width);
  return merge_channels(planes);
}

double laplacian_energy(const FloatImage& image) {
  const int h = image.height();
  const int w = image.width();
  if (h < 3 || w < 3) return 0.0;
  double sum = 0.0;
  for (int y = 1; y < h - 1; ++y) {
    for (int x = 1; x < w - 1; ++x) {
      sum += std::abs(image(y - 1, x) + image(y + 1, x) + image(y, x - 1) + image(y, x + 1) -
                      4.0 * image(y, x));
    }
  }
  return sum / (static_cast<double>(h - 2) * (w - 2));
}

}  // namespace pfake
