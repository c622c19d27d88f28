#include "pfake/editor.hpp"

#include <algorithm>
#include <cmath>

#include "pfake/dct.hpp"
#include "pfake/filters.hpp"
#include "pfake/media.hpp"
#include "pfake/random.hpp"

namespace pfake {

namespace {

// floor() with a guard against products like 0.1 * 10 landing a hair
// below an integer; exact-arithmetic results are unaffected.
double guarded_floor(double v) noexcept { return std::floor(v + 1e-9); }

std::uint8_t floor_clamp(double v) noexcept {
  return static_cast<std::uint8_t>(std::clamp(guarded_floor(v), 0.0, 255.0));
}

template <typename T, int C>
Image<T, C> remap_floor_impl(const Image<T, C>& image, const DisplacementField& field) {
  const int h = image.height();
  const int w = image.width();
  if (!field.rows.same_shape(image) || !field.cols.same_shape(image)) {
    fail(ErrorCode::DimensionMismatch, "displacement field does not match image");
  }
  Image<T, C> out(h, w);
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      const int si = static_cast<int>(std::clamp(std::floor(i + field.rows(i, j)), 0.0, h - 1.0));
      const int sj = static_cast<int>(std::clamp(std::floor(j + field.cols(i, j)), 0.0, w - 1.0));
      for (int c = 0; c < C; ++c) out(i, j, c) = image(si, sj, c);
    }
  }
  return out;
}

template <typename T, int C>
Image<T, C> elastic_impl(const Image<T, C>& image, double theta_sigma, double theta_alpha,
                         std::uint64_t seed) {
  if (!(theta_sigma > 0.0) || !(theta_alpha >= 0.0)) {
    fail(ErrorCode::InvalidArgument, "elastic transform needs theta_sigma > 0 and theta_alpha >= 0");
  }
  if (theta_alpha == 0.0) return image;
  return remap_floor_impl(image,
                          elastic_displacement(image.height(), image.width(), theta_sigma, theta_alpha, seed));
}

double control_coordinate(int index, int size) {
  return size > 1 ? index * 3.0 / (size - 1) : 0.0;
}

}  // namespace

Lut brightness_lut(double theta_b) {
  Lut lut;
  for (int k = 0; k < 256; ++k) lut.table[k] = floor_clamp(k * theta_b);
  return lut;
}

Lut contrast_lut(double theta_t, double mean) {
  Lut lut;
  for (int k = 0; k < 256; ++k) lut.table[k] = floor_clamp(k * theta_t + mean * (1.0 - theta_t));
  return lut;
}

Frame apply_lut(const Frame& frame, const Lut& lut) {
  Frame out = frame;
  for (auto& v : out.data()) v = lut[v];
  return out;
}

double mean_gray(const Frame& frame) {
  const GrayImage gray = rgb_to_gray(frame);
  double sum = 0.0;
  for (auto v : gray.data()) sum += v;
  return sum / static_cast<double>(gray.pixel_count());
}

Frame adjust_brightness(const Frame& frame, double theta_b) {
  if (!(theta_b > 0.0)) fail(ErrorCode::InvalidArgument, "theta_b must be positive");
  return apply_lut(frame, brightness_lut(theta_b));
}

Frame adjust_contrast(const Frame& frame, double theta_t) {
  if (!(theta_t > 0.0)) fail(ErrorCode::InvalidArgument, "theta_t must be positive");
  return apply_lut(frame, contrast_lut(theta_t, mean_gray(frame)));
}

Frame adjust_saturation(const Frame& frame, double theta_a) {
  if (!(theta_a >= 0.0)) fail(ErrorCode::InvalidArgument, "theta_a must be non-negative");
  const GrayImage gray = rgb_to_gray(frame);
  Frame out(frame.height(), frame.width());
  auto src = frame.data();
  auto dst = out.data();
  auto g = gray.data();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double base = g[i] * (1.0 - theta_a);
    for (int c = 0; c < 3; ++c) dst[3 * i + c] = floor_clamp(src[3 * i + c] * theta_a + base);
  }
  return out;
}

Frame color_jitter(const Frame& frame, const ColorJitter& jitter) {
  return adjust_saturation(adjust_contrast(adjust_brightness(frame, jitter.brightness), jitter.contrast),
                           jitter.saturation);
}

Frame iso_noise(const Frame& frame, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) fail(ErrorCode::InvalidArgument, "iso sigma must be >= 0");
  if (sigma == 0.0) return frame;
  const GrayImage gray = rgb_to_gray(frame);
  RandomStream rng(seed);
  Frame out(frame.height(), frame.width());
  auto src = frame.data();
  auto dst = out.data();
  auto g = gray.data();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double stddev = sigma * (0.5 + 0.5 * g[i] / 255.0);
    for (int c = 0; c < 3; ++c) dst[3 * i + c] = round_to_byte(src[3 * i + c] + stddev * rng.normal());
  }
  return out;
}

Frame sharpen(const Frame& frame, double amount) {
  if (!(amount >= 0.0)) fail(ErrorCode::InvalidArgument, "sharpen amount must be >= 0");
  if (amount == 0.0) return frame;
  auto planes = split_channels(frame);
  for (auto& p : planes) {
    const FloatImage blurred = gaussian_blur_ksize(p, 5);
    auto v = p.data();
    auto b = blurred.data();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += amount * (v[i] - b[i]);
  }
  return merge_channels(planes);
}

Frame downsample_cycle(const Frame& frame, double scale) {
  if (!(scale > 0.0 && scale < 1.0)) fail(ErrorCode::InvalidArgument, "downsample scale must lie in (0, 1)");
  const int h = frame.height();
  const int w = frame.width();
  const int small_h = std::max(1, static_cast<int>(std::lround(scale * h)));
  const int small_w = std::max(1, static_cast<int>(std::lround(scale * w)));
  if (small_h == h && small_w == w) return frame;
  return resize_bilinear(resize_bilinear(frame, small_h, small_w), h, w);
}

DisplacementField uniform_displacement_noise(int height, int width, std::uint64_t seed) {
  RandomStream rng(seed);
  DisplacementField noise{FloatImage(height, width), FloatImage(height, width)};
  for (double& v : noise.rows.data()) v = rng.uniform(-1.0, 1.0);
  for (double& v : noise.cols.data()) v = rng.uniform(-1.0, 1.0);
  return noise;
}

DisplacementField elastic_displacement(int height, int width, double theta_sigma, double theta_alpha,
                                       std::uint64_t seed) {
  DisplacementField field = uniform_displacement_noise(height, width, seed);
  for (FloatImage* plane : {&field.rows, &field.cols}) {
    *plane = gaussian_blur(*plane, theta_sigma);
    for (double& v : plane->data()) v *= theta_alpha;
  }
  return field;
}

Frame remap_floor(const Frame& image, const DisplacementField& field) { return remap_floor_impl(image, field); }
FloatImage remap_floor(const FloatImage& image, const DisplacementField& field) {
  return remap_floor_impl(image, field);
}
GrayImage remap_floor(const GrayImage& image, const DisplacementField& field) {
  return remap_floor_impl(image, field);
}

Frame elastic_transform(const Frame& image, double theta_sigma, double theta_alpha, std::uint64_t seed) {
  return elastic_impl(image, theta_sigma, theta_alpha, seed);
}
FloatImage elastic_transform(const FloatImage& image, double theta_sigma, double theta_alpha,
                             std::uint64_t seed) {
  return elastic_impl(image, theta_sigma, theta_alpha, seed);
}
GrayImage elastic_transform(const GrayImage& image, double theta_sigma, double theta_alpha,
                            std::uint64_t seed) {
  return elastic_impl(image, theta_sigma, theta_alpha, seed);
}

Frame remap_bilinear(const Frame& image, const DisplacementField& field) {
  if (!field.rows.same_shape(image) || !field.cols.same_shape(image)) {
    fail(ErrorCode::DimensionMismatch, "displacement field does not match image");
  }
  const auto planes = split_channels(image);
  std::array<FloatImage, 3> out{FloatImage(image.height(), image.width()),
                                FloatImage(image.height(), image.width()),
                                FloatImage(image.height(), image.width())};
  for (int i = 0; i < image.height(); ++i) {
    for (int j = 0; j < image.width(); ++j) {
      const double r = i + field.rows(i, j);
      const double c = j + field.cols(i, j);
      for (int ch = 0; ch < 3; ++ch) out[ch](i, j) = sample_bilinear(planes[ch], r, c);
    }
  }
  return merge_channels(out);
}

DisplacementField dense_warp_field(int height, int width, double amp, std::uint64_t seed) {
  if (!(amp >= 0.0)) fail(ErrorCode::InvalidArgument, "dense warp amplitude must be >= 0");
  RandomStream rng(seed);
  FloatImage grid_rows(4, 4);
  FloatImage grid_cols(4, 4);
  for (double& v : grid_rows.data()) v = rng.uniform(-amp, amp);
  for (double& v : grid_cols.data()) v = rng.uniform(-amp, amp);
  DisplacementField field{FloatImage(height, width), FloatImage(height, width)};
  for (int i = 0; i < height; ++i) {
    const double gi = control_coordinate(i, height);
    for (int j = 0; j < width; ++j) {
      const double gj = control_coordinate(j, width);
      field.rows(i, j) = sample_bilinear(grid_rows, gi, gj);
      field.cols(i, j) = sample_bilinear(grid_cols, gi, gj);
    }
  }
  return field;
}

Frame dense_warp(const Frame& frame, double amp, std::uint64_t seed) {
  if (amp == 0.0) return frame;
  return remap_bilinear(frame, dense_warp_field(frame.height(), frame.width(), amp, seed));
}

Frame piecewise_affine_warp(const Frame& frame, std::span<const Point2> source, std::span<const Point2> target,
                            std::span<const Triangle> triangles) {
  if (source.size() != target.size()) {
    fail(ErrorCode::InvalidArgument, "source and target point counts differ");
  }
  const int h = frame.height();
  const int w = frame.width();
  const auto planes = split_channels(frame);
  Frame out = frame;
  std::vector<std::uint8_t> covered(static_cast<std::size_t>(h) * w, 0);

  for (const Triangle& tri : triangles) {
    const Point2 t0 = target[tri[0]], t1 = target[tri[1]], t2 = target[tri[2]];
    const Point2 s0 = source[tri[0]], s1 = source[tri[1]], s2 = source[tri[2]];
    const double det = (t1.x - t0.x) * (t2.y - t0.y) - (t2.x - t0.x) * (t1.y - t0.y);
    if (std::abs(det) < 1e-12) continue;

    const int x_lo = std::max(0, static_cast<int>(std::floor(std::min({t0.x, t1.x, t2.x}))));
    const int x_hi = std::min(w - 1, static_cast<int>(std::ceil(std::max({t0.x, t1.x, t2.x}))));
    const int y_lo = std::max(0, static_cast<int>(std::floor(std::min({t0.y, t1.y, t2.y}))));
    const int y_hi = std::min(h - 1, static_cast<int>(std::ceil(std::max({t0.y, t1.y, t2.y}))));
    for (int y = y_lo; y <= y_hi; ++y) {
      for (int x = x_lo; x <= x_hi; ++x) {
        const std::size_t idx = static_cast<std::size_t>(y) * w + x;
        if (covered[idx]) continue;
        // Barycentric numerators; dividing once at the end keeps integer
        // layouts exact so rounding ties resolve consistently.
        const double n1 = (x - t0.x) * (t2.y - t0.y) - (t2.x - t0.x) * (y - t0.y);
        const double n2 = (t1.x - t0.x) * (y - t0.y) - (x - t0.x) * (t1.y - t0.y);
        const double b1 = n1 / det;
        const double b2 = n2 / det;
        constexpr double kTol = -1e-9;
        if (1.0 - b1 - b2 < kTol || b1 < kTol || b2 < kTol) continue;
        covered[idx] = 1;
        const double sx = s0.x + (n1 * (s1.x - s0.x) + n2 * (s2.x - s0.x)) / det;
        const double sy = s0.y + (n1 * (s1.y - s0.y) + n2 * (s2.y - s0.y)) / det;
        for (int c = 0; c < 3; ++c) out(y, x, c) = round_to_byte(sample_bilinear(planes[c], sy, sx));
      }
    }
  }
  return out;
}

std::array<Point2, 8> border_anchors(int height, int width) {
  const double r = width - 1.0;
  const double b = height - 1.0;
  return {{{0.0, 0.0}, {r, 0.0}, {r, b}, {0.0, b}, {r / 2, 0.0}, {r, b / 2}, {r / 2, b}, {0.0, b / 2}}};
}

Frame triangular_stretch(const Frame& frame, const Landmarks& landmarks, double jitter, std::uint64_t seed) {
  if (!(jitter >= 0.0)) fail(ErrorCode::InvalidArgument, "triangle jitter must be >= 0");
  const auto& pts = landmarks.points();
  const Polygon hull = convex_hull(pts);
  if (hull.size() < 3 || std::abs(signed_area(hull)) < 1e-9) {
    fail(ErrorCode::DegenerateTriangulation, "landmarks are collinear");
  }
  std::vector<Point2> source(pts.begin(), pts.end());
  const auto anchors = border_anchors(frame.height(), frame.width());
  source.insert(source.end(), anchors.begin(), anchors.end());

  std::vector<Point2> target = source;
  RandomStream rng(seed);
  for (std::size_t i = 0; i < kLandmarkCount; ++i) {
    target[i].x += rng.uniform(-jitter, jitter);
    target[i].y += rng.uniform(-jitter, jitter);
  }
  if (jitter == 0.0) return frame;
  const auto triangles = delaunay_triangulate(source);
  return piecewise_affine_warp(frame, source, target, triangles);
}

double frequency_offset(double noise) noexcept {
  // 2 sigmoid(x) - 1 == tanh(x / 2), exact zero at the origin.
  return std::tanh(0.5 * noise);
}

std::array<FloatImage, 3> frequency_noise(int height, int width, double theta_f, std::uint64_t seed) {
  if (!(theta_f >= 0.0)) fail(ErrorCode::InvalidArgument, "theta_f must be >= 0");
  const double stddev = std::sqrt(1.0 + theta_f);
  const RandomStream base(seed);
  std::array<FloatImage, 3> noise{FloatImage(height, width), FloatImage(height, width),
                                  FloatImage(height, width)};
  for (int c = 0; c < 3; ++c) {
    RandomStream rng = base.fork(static_cast<std::uint64_t>(c));
    for (double& v : noise[c].data()) v = stddev * rng.normal();
  }
  return noise;
}

Frame freq_perturb_with_noise(const Frame& frame, const std::array<FloatImage, 3>& noise) {
  auto planes = split_channels(frame);
  for (int c = 0; c < 3; ++c) {
    if (!noise[c].same_shape(frame)) fail(ErrorCode::DimensionMismatch, "frequency noise does not match frame");
    for (double& v : planes[c].data()) v /= 255.0;
    FloatImage coeffs = dct2(planes[c]);
    auto x = coeffs.data();
    auto n = noise[c].data();
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += frequency_offset(n[i]);
    planes[c] = idct2(coeffs);
    for (double& v : planes[c].data()) v *= 255.0;
  }
  return merge_channels(planes);
}

Frame freq_perturb(const Frame& frame, double theta_f, std::uint64_t seed) {
  return freq_perturb_with_noise(frame, frequency_noise(frame.height(), frame.width(), theta_f, seed));
}

Frame edit_frame(const Frame& frame, const Landmarks& landmarks, const EditorParams& p) {
  const auto& on = p.enabled;
  Frame out = frame;
  if (on.downsample) out = downsample_cycle(out, p.down_scale);
  out = color_jitter(out, p.jitter);
  if (on.iso_noise) out = iso_noise(out, p.iso_sigma, p.iso_seed);
  if (on.sharpen) out = sharpen(out, p.sharpen_amount);
  if (on.elastic) out = elastic_transform(out, p.elastic.theta_sigma, p.elastic.theta_alpha, p.elastic.noise_seed);
  if (on.dense_warp) out = dense_warp(out, p.dense_warp_amp, p.warp_seed);
  if (on.tri_stretch) out = triangular_stretch(out, landmarks, p.tri_jitter, p.tri_seed);
  if (on.freq_perturb) out = freq_perturb(out, p.theta_f, p.freq_seed);
  return out;
}

}  // namespace pfake
