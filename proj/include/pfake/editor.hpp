#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "pfake/geometry.hpp"
#include "pfake/image.hpp"
#include "pfake/rpg.hpp"

namespace pfake {

/// 256-entry 8-bit mapping table.
struct Lut {
  std::array<std::uint8_t, 256> table{};

  std::uint8_t operator[](std::uint8_t v) const noexcept { return table[v]; }
  bool operator==(const Lut&) const = default;
};

/// T^b[k] = clamp(floor(k * theta_b), 0, 255).
Lut brightness_lut(double theta_b);
/// T^s[k] = clamp(floor(k * theta_t + mean_gray * (1 - theta_t)), 0, 255).
Lut contrast_lut(double theta_t, double mean_gray);
Frame apply_lut(const Frame& frame, const Lut& lut);

/// Mean of rgb_to_gray(frame).
double mean_gray(const Frame& frame);

Frame adjust_brightness(const Frame& frame, double theta_b);
Frame adjust_contrast(const Frame& frame, double theta_t);
Frame adjust_saturation(const Frame& frame, double theta_a);
/// Brightness, then contrast, then saturation.
Frame color_jitter(const Frame& frame, const ColorJitter& jitter);

/// Additive Gaussian noise with std sigma * (0.5 + 0.5 * gray / 255).
Frame iso_noise(const Frame& frame, double sigma, std::uint64_t seed);
/// Unsharp mask against a 5x5 Gaussian blur.
Frame sharpen(const Frame& frame, double amount);
/// Bilinear resize to round(scale * H) x round(scale * W) and back.
Frame downsample_cycle(const Frame& frame, double scale);

/// Source-coordinate offsets for every output pixel (rows, then columns).
struct DisplacementField {
  FloatImage rows;
  FloatImage cols;
};

/// Raw U(-1, 1) noise for the row and column axes, drawn from `seed`
/// row-major, the row plane first.
DisplacementField uniform_displacement_noise(int height, int width, std::uint64_t seed);

/// GaussianBlur(noise, theta_sigma) * theta_alpha for both axes.
DisplacementField elastic_displacement(int height, int width, double theta_sigma, double theta_alpha,
                                       std::uint64_t seed);

/// out[i, j] = in[clamp(floor(i + d_row), 0, H - 1), clamp(floor(j + d_col), 0, W - 1)].
Frame remap_floor(const Frame& image, const DisplacementField& field);
FloatImage remap_floor(const FloatImage& image, const DisplacementField& field);
GrayImage remap_floor(const GrayImage& image, const DisplacementField& field);

Frame elastic_transform(const Frame& image, double theta_sigma, double theta_alpha, std::uint64_t seed);
FloatImage elastic_transform(const FloatImage& image, double theta_sigma, double theta_alpha,
                             std::uint64_t seed);
GrayImage elastic_transform(const GrayImage& image, double theta_sigma, double theta_alpha,
                            std::uint64_t seed);

/// Bilinear remap: out[i, j] = in(i + d_row, j + d_col) with clamped coordinates.
Frame remap_bilinear(const Frame& image, const DisplacementField& field);

/// Displacements from a 4x4 control grid in [-amp, amp], bilinearly upsampled.
DisplacementField dense_warp_field(int height, int width, double amp, std::uint64_t seed);
Frame dense_warp(const Frame& frame, double amp, std::uint64_t seed);

/// Warps each triangle of `source` onto the same triangle of `target` by its
/// affine map, sampling bilinearly. Pixels outside every target triangle
/// are copied unchanged.
Frame piecewise_affine_warp(const Frame& frame, std::span<const Point2> source,
                            std::span<const Point2> target, std::span<const Triangle> triangles);

/// 4 corners and 4 edge midpoints of a height x width frame.
std::array<Point2, 8> border_anchors(int height, int width);

/// Delaunay warp of the 68 landmarks plus border anchors, with every landmark
/// jittered by U(-jitter, jitter) per axis. Throws DegenerateTriangulation.
Frame triangular_stretch(const Frame& frame, const Landmarks& landmarks, double jitter, std::uint64_t seed);

/// 2 * sigmoid(x) - 1, in (-1, 1).
double frequency_offset(double noise) noexcept;
/// Per-channel N(0, 1 + theta_f) noise planes (variance 1 + theta_f).
std::array<FloatImage, 3> frequency_noise(int height, int width, double theta_f, std::uint64_t seed);
/// out = clamp(round(IDCT2(DCT2(in / 255) + 2 sigmoid(noise) - 1) * 255)) per channel.
Frame freq_perturb_with_noise(const Frame& frame, const std::array<FloatImage, 3>& noise);
Frame freq_perturb(const Frame& frame, double theta_f, std::uint64_t seed);

/// Applies the enabled edits in the fixed order: downsample_cycle,
/// color_jitter, iso_noise, sharpen, elastic_transform, dense_warp,
/// triangular_stretch, freq_perturb.
Frame edit_frame(const Frame& frame, const Landmarks& landmarks, const EditorParams& params);

}  // namespace pfake
