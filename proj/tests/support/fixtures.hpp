#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "pfake/image.hpp"

namespace pfake::testing {

/// 68 iBUG-layout points for an upright synthetic face centred at (cx, cy)
/// with half-width rx and half-height ry.
Landmarks synthetic_landmarks(double cx, double cy, double rx, double ry);

/// Textured scene with a face-like ellipse; the whole scene is shifted by
/// `shift` pixels to the right so consecutive shifts model head motion.
Frame synthetic_face_frame(int height, int width, int shift);

/// `length` frames of the synthetic scene moving one pixel per frame, with
/// matching landmarks.
Clip synthetic_face_clip(int length = 32, int size = 299);

Frame constant_frame(int height, int width, std::uint8_t r, std::uint8_t g, std::uint8_t b);
Frame random_frame(int height, int width, std::uint64_t seed);
/// 1-pixel black/white checkerboard.
Frame checkerboard(int height, int width);
/// Gray horizontal ramp: every channel equals the column index (width <= 256).
Frame column_ramp(int height, int width);

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace pfake::testing
