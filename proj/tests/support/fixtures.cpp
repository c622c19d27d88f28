#include "support/fixtures.hpp"

#include <unistd.h>

#include <atomic>
#include <cmath>
#include <numbers>
#include <vector>

#include "pfake/random.hpp"

namespace pfake::testing {

namespace {

constexpr double kPi = std::numbers::pi;

// Deterministic texture anchored to scene coordinates: smooth structure plus
// light per-pixel grain, roughly what a resized camera crop looks like.
double texture(int sx, int sy) {
  const std::uint64_t h = mix64((static_cast<std::uint64_t>(sx + 4096) << 20) ^ static_cast<std::uint64_t>(sy + 4096));
  const double grain = static_cast<double>(h >> 40) / static_cast<double>(1ULL << 24) - 0.5;
  const double smooth = std::sin(sx * 0.21) * std::cos(sy * 0.17) + 0.6 * std::sin(sx * 0.09 + sy * 0.05) +
                        0.4 * std::cos(sx * 0.37 - sy * 0.29);
  return 14.0 * smooth + 3.0 * grain;
}

}  // namespace

Landmarks synthetic_landmarks(double cx, double cy, double rx, double ry) {
  std::vector<Point2> unit;
  for (int i = 0; i <= 16; ++i) {  // jaw
    const double a = kPi * i / 16.0;
    unit.push_back({-0.95 * std::cos(a), 0.05 + 0.9 * std::sin(a)});
  }
  for (int side = 0; side < 2; ++side) {  // brows
    for (int k = 0; k < 5; ++k) {
      const double x = side == 0 ? -0.75 + 0.15 * k : 0.15 + 0.15 * k;
      unit.push_back({x, -0.35 - 0.08 * std::sin(kPi * k / 4.0)});
    }
  }
  for (int k = 0; k < 4; ++k) unit.push_back({0.0, -0.25 + 0.4 * k / 3.0});          // bridge
  for (int k = 0; k < 5; ++k) unit.push_back({-0.18 + 0.09 * k, 0.25 + 0.04 * (1.0 - std::abs(k - 2) / 2.0)});
  for (double ex : {-0.4, 0.4}) {  // eyes
    for (int k = 0; k < 6; ++k) {
      const double a = kPi - k * kPi / 3.0;
      unit.push_back({ex + 0.15 * std::cos(a), -0.15 - 0.06 * std::sin(a)});
    }
  }
  for (int k = 0; k < 12; ++k) {  // outer lip
    const double a = kPi - k * kPi / 6.0;
    unit.push_back({0.35 * std::cos(a), 0.55 - 0.14 * std::sin(a)});
  }
  for (int k = 0; k < 8; ++k) {  // inner lip
    const double a = kPi - k * kPi / 4.0;
    unit.push_back({0.22 * std::cos(a), 0.55 - 0.06 * std::sin(a)});
  }
  std::vector<Point2> pts;
  for (const auto& u : unit) pts.push_back({cx + u.x * rx, cy + u.y * ry});
  return Landmarks(pts);
}

Frame synthetic_face_frame(int height, int width, int shift) {
  Frame f(height, width);
  const double cx = width / 2.0;
  const double cy = height / 2.0;
  const double rx = 0.32 * width;
  const double ry = 0.42 * height;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const int sx = x - shift;  // scene coordinate
      const double t = texture(sx, y);
      const double ex = (sx - cx) / rx;
      const double ey = (y - cy) / ry;
      double r, g, b;
      if (ex * ex + ey * ey <= 1.0) {
        r = 196 + t;
        g = 150 + 0.8 * t;
        b = 128 + 0.6 * t;
      } else {
        r = 60 + 0.25 * y + 0.5 * t;
        g = 90 + 0.15 * sx + 0.5 * t;
        b = 120 + 0.5 * t;
      }
      f(y, x, 0) = round_to_byte(r);
      f(y, x, 1) = round_to_byte(g);
      f(y, x, 2) = round_to_byte(b);
    }
  }
  return f;
}

Clip synthetic_face_clip(int length, int size) {
  std::vector<Frame> frames;
  std::vector<Landmarks> rows;
  for (int t = 0; t < length; ++t) {
    frames.push_back(synthetic_face_frame(size, size, t));
    rows.push_back(synthetic_landmarks(size / 2.0 + t, size / 2.0, 0.30 * size, 0.36 * size));
  }
  return Clip(std::move(frames), std::move(rows), "synthetic");
}

Frame constant_frame(int height, int width, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  Frame f(height, width);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) {
      f(y, x, 0) = r;
      f(y, x, 1) = g;
      f(y, x, 2) = b;
    }
  return f;
}

Frame random_frame(int height, int width, std::uint64_t seed) {
  RandomStream rng(seed);
  Frame f(height, width);
  for (auto& v : f.data()) v = static_cast<std::uint8_t>(rng.uniform_int(0, 255));
  return f;
}

Frame checkerboard(int height, int width) {
  Frame f(height, width);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      for (int c = 0; c < 3; ++c) f(y, x, c) = (x + y) % 2 ? 255 : 0;
  return f;
}

Frame column_ramp(int height, int width) {
  Frame f(height, width);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      for (int c = 0; c < 3; ++c) f(y, x, c) = static_cast<std::uint8_t>(x);
  return f;
}

TempDir::TempDir(const std::string& tag) {
  static std::atomic<int> counter{0};
  path_ = std::filesystem::temp_directory_path() /
          ("pfake-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  std::filesystem::remove_all(path_);
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

}  // namespace pfake::testing
