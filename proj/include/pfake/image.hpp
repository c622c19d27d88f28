#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pfake/errors.hpp"

namespace pfake {

/// Dense row-major image with interleaved channels.
template <typename T, int Channels>
class Image {
 public:
  using value_type = T;
  static constexpr int kChannels = Channels;

  Image() = default;

  Image(int height, int width, T fill = T{}) : height_(height), width_(width) {
    check_dims(height, width);
    data_.assign(static_cast<std::size_t>(height) * width * Channels, fill);
  }

  Image(int height, int width, std::vector<T> data)
      : height_(height), width_(width), data_(std::move(data)) {
    check_dims(height, width);
    if (data_.size() != static_cast<std::size_t>(height) * width * Channels) {
      fail(ErrorCode::DimensionMismatch,
           "image data length " + std::to_string(data_.size()) + " does not match " +
               std::to_string(height) + "x" + std::to_string(width) + "x" +
               std::to_string(Channels));
    }
  }

  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }
  static constexpr int channels() noexcept { return Channels; }
  bool empty() const noexcept { return data_.empty(); }
  std::size_t pixel_count() const noexcept { return static_cast<std::size_t>(height_) * width_; }

  bool same_shape(int height, int width) const noexcept {
    return height_ == height && width_ == width;
  }
  template <typename U, int C>
  bool same_shape(const Image<U, C>& other) const noexcept {
    return same_shape(other.height(), other.width());
  }

  T& operator()(int row, int col, int ch = 0) noexcept {
    return data_[(static_cast<std::size_t>(row) * width_ + col) * Channels + ch];
  }
  const T& operator()(int row, int col, int ch = 0) const noexcept {
    return data_[(static_cast<std::size_t>(row) * width_ + col) * Channels + ch];
  }

  std::span<T> data() noexcept { return data_; }
  std::span<const T> data() const noexcept { return data_; }
  const std::vector<T>& storage() const noexcept { return data_; }

  bool operator==(const Image&) const = default;

 private:
  static void check_dims(int height, int width) {
    if (height <= 0 || width <= 0) {
      fail(ErrorCode::InvalidArgument, "image dimensions must be positive, got " +
                                           std::to_string(height) + "x" + std::to_string(width));
    }
  }

  int height_ = 0;
  int width_ = 0;
  std::vector<T> data_;
};

/// H x W x 3 RGB frame with 8-bit samples.
using Frame = Image<std::uint8_t, 3>;
/// Single-channel 8-bit image.
using GrayImage = Image<std::uint8_t, 1>;
/// Single-channel real-valued image.
using FloatImage = Image<double, 1>;
/// Soft matte, values in [0, 1].
using Mask = FloatImage;

inline constexpr int kMinPipelineSide = 32;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point2&) const = default;
};

inline constexpr std::size_t kLandmarkCount = 68;

/// 68-point facial landmarks in pixel units, origin top-left, iBUG layout.
class Landmarks {
 public:
  Landmarks() = default;
  explicit Landmarks(std::span<const Point2> points);

  const std::array<Point2, kLandmarkCount>& points() const noexcept { return points_; }
  const Point2& operator[](std::size_t i) const noexcept { return points_[i]; }

  /// Points [first, last] inclusive.
  std::vector<Point2> range(std::size_t first, std::size_t last) const;

  /// True when at least one point lies strictly inside a height x width frame.
  bool touches_frame(int height, int width) const noexcept;

  bool operator==(const Landmarks&) const = default;

 private:
  std::array<Point2, kLandmarkCount> points_{};
};

/// Ordered frames with per-frame landmarks. All frames share one size.
class Clip {
 public:
  Clip(std::vector<Frame> frames, std::vector<Landmarks> landmarks, std::string source_id = {});

  std::size_t length() const noexcept { return frames_.size(); }
  int height() const noexcept { return frames_.front().height(); }
  int width() const noexcept { return frames_.front().width(); }

  const std::vector<Frame>& frames() const noexcept { return frames_; }
  const std::vector<Landmarks>& landmarks() const noexcept { return landmarks_; }
  const Frame& frame(std::size_t t) const { return frames_.at(t); }
  const Landmarks& landmarks(std::size_t t) const { return landmarks_.at(t); }
  const std::string& source_id() const noexcept { return source_id_; }

  bool operator==(const Clip&) const = default;

 private:
  std::vector<Frame> frames_;
  std::vector<Landmarks> landmarks_;
  std::string source_id_;
};

std::uint8_t clamp_to_byte(double value) noexcept;
/// Rounds half away from zero, then clamps to [0, 255].
std::uint8_t round_to_byte(double value) noexcept;

/// Splits a frame into three real-valued planes (R, G, B) without scaling.
std::array<FloatImage, 3> split_channels(const Frame& frame);
/// Inverse of split_channels; samples are rounded and clamped.
Frame merge_channels(const std::array<FloatImage, 3>& planes);

FloatImage to_float(const GrayImage& gray);

}  // namespace pfake
