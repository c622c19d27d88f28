#include "pfake/image.hpp"

#include <algorithm>
#include <cmath>

namespace pfake {

Landmarks::Landmarks(std::span<const Point2> points) {
  if (points.size() != kLandmarkCount) {
    fail(ErrorCode::InvalidArgument,
         "expected 68 landmarks, got " + std::to_string(points.size()));
  }
  for (std::size_t i = 0; i < kLandmarkCount; ++i) {
    if (!std::isfinite(points[i].x) || !std::isfinite(points[i].y)) {
      fail(ErrorCode::InvalidArgument, "landmark " + std::to_string(i) + " is not finite");
    }
    points_[i] = points[i];
  }
}

std::vector<Point2> Landmarks::range(std::size_t first, std::size_t last) const {
  return {points_.begin() + first, points_.begin() + last + 1};
}

bool Landmarks::touches_frame(int height, int width) const noexcept {
  return std::any_of(points_.begin(), points_.end(), [&](const Point2& p) {
    return p.x > 0.0 && p.y > 0.0 && p.x < width && p.y < height;
  });
}

Clip::Clip(std::vector<Frame> frames, std::vector<Landmarks> landmarks, std::string source_id)
    : frames_(std::move(frames)), landmarks_(std::move(landmarks)), source_id_(std::move(source_id)) {
  if (frames_.empty()) fail(ErrorCode::MissingFrames, "clip has no frames");
  if (landmarks_.size() != frames_.size()) {
    fail(ErrorCode::CountMismatch, std::to_string(frames_.size()) + " frames but " +
                                       std::to_string(landmarks_.size()) + " landmark rows");
  }
  for (std::size_t t = 1; t < frames_.size(); ++t) {
    if (!frames_[t].same_shape(frames_.front())) {
      fail(ErrorCode::DimensionMismatch, "frame " + std::to_string(t) + " differs in size");
    }
  }
  for (std::size_t t = 0; t < landmarks_.size(); ++t) {
    if (!landmarks_[t].touches_frame(height(), width())) {
      fail(ErrorCode::InvalidArgument,
           "landmarks of frame " + std::to_string(t) + " lie entirely outside the frame");
    }
  }
}

std::uint8_t clamp_to_byte(double value) noexcept {
  return static_cast<std::uint8_t>(std::clamp(value, 0.0, 255.0));
}

std::uint8_t round_to_byte(double value) noexcept {
  return static_cast<std::uint8_t>(std::clamp(std::round(value), 0.0, 255.0));
}

std::array<FloatImage, 3> split_channels(const Frame& frame) {
  const int h = frame.height();
  const int w = frame.width();
  std::array<FloatImage, 3> planes{FloatImage(h, w), FloatImage(h, w), FloatImage(h, w)};
  auto src = frame.data();
  for (int c = 0; c < 3; ++c) {
    auto dst = planes[c].data();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = src[i * 3 + c];
  }
  return planes;
}

Frame merge_channels(const std::array<FloatImage, 3>& planes) {
  Frame out(planes[0].height(), planes[0].width());
  auto dst = out.data();
  for (int c = 0; c < 3; ++c) {
    auto src = planes[c].data();
    for (std::size_t i = 0; i < src.size(); ++i) dst[i * 3 + c] = round_to_byte(src[i]);
  }
  return out;
}

FloatImage to_float(const GrayImage& gray) {
  FloatImage out(gray.height(), gray.width());
  std::copy(gray.data().begin(), gray.data().end(), out.data().begin());
  return out;
}

}  // namespace pfake
