#include "pfake/media.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>
#include <sstream>

namespace pfake {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

bool is_image_file(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg" || ext == ".bmp" || ext == ".tif" ||
         ext == ".tiff" || ext == ".ppm" || ext == ".pgm";
}

void write_mat(const cv::Mat& mat, const fs::path& path) {
  bool ok = false;
  try {
    ok = cv::imwrite(path.string(), mat, {cv::IMWRITE_PNG_COMPRESSION, 3});
  } catch (const cv::Exception& e) {
    throw Error(ErrorCode::IoError, "cannot write " + path.string() + ": " + e.what());
  }
  if (!ok) fail(ErrorCode::IoError, "cannot write " + path.string());
}

}  // namespace

GrayImage rgb_to_gray(const Frame& frame) {
  GrayImage gray(frame.height(), frame.width());
  auto src = frame.data();
  auto dst = gray.data();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    // Integer weights in thousandths: ties such as 97.5 are exact, where the
    // double sum can land a hair below them.
    const int sum = 299 * src[3 * i] + 587 * src[3 * i + 1] + 114 * src[3 * i + 2];
    dst[i] = static_cast<std::uint8_t>((sum + 500) / 1000);
  }
  return gray;
}

Frame read_frame(const fs::path& path) {
  cv::Mat bgr;
  try {
    bgr = cv::imread(path.string(), cv::IMREAD_COLOR);
  } catch (const cv::Exception& e) {
    throw Error(ErrorCode::DecodeError, path.string() + ": " + e.what());
  }
  if (bgr.empty() || bgr.type() != CV_8UC3) fail(ErrorCode::DecodeError, "cannot decode " + path.string());
  Frame frame(bgr.rows, bgr.cols);
  for (int y = 0; y < bgr.rows; ++y) {
    const auto* row = bgr.ptr<cv::Vec3b>(y);
    for (int x = 0; x < bgr.cols; ++x) {
      frame(y, x, 0) = row[x][2];
      frame(y, x, 1) = row[x][1];
      frame(y, x, 2) = row[x][0];
    }
  }
  return frame;
}

void write_png(const Frame& frame, const fs::path& path) {
  cv::Mat bgr(frame.height(), frame.width(), CV_8UC3);
  for (int y = 0; y < frame.height(); ++y) {
    auto* row = bgr.ptr<cv::Vec3b>(y);
    for (int x = 0; x < frame.width(); ++x) {
      row[x] = cv::Vec3b(frame(y, x, 2), frame(y, x, 1), frame(y, x, 0));
    }
  }
  write_mat(bgr, path);
}

void write_png(const GrayImage& image, const fs::path& path) {
  cv::Mat mat(image.height(), image.width(), CV_8UC1);
  std::copy(image.data().begin(), image.data().end(), mat.ptr<std::uint8_t>(0));
  write_mat(mat, path);
}

void write_mask_png(const Mask& mask, const fs::path& path) {
  GrayImage gray(mask.height(), mask.width());
  auto src = mask.data();
  auto dst = gray.data();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = round_to_byte(src[i] * 255.0);
  write_png(gray, path);
}

Mask read_mask_png(const fs::path& path) {
  cv::Mat mat;
  try {
    mat = cv::imread(path.string(), cv::IMREAD_GRAYSCALE);
  } catch (const cv::Exception& e) {
    throw Error(ErrorCode::DecodeError, path.string() + ": " + e.what());
  }
  if (mat.empty() || mat.type() != CV_8UC1) fail(ErrorCode::DecodeError, "cannot decode " + path.string());
  Mask mask(mat.rows, mat.cols);
  for (int y = 0; y < mat.rows; ++y)
    for (int x = 0; x < mat.cols; ++x) mask(y, x) = mat.at<std::uint8_t>(y, x) / 255.0;
  return mask;
}

std::vector<Landmarks> parse_landmarks(std::string_view document) {
  json j;
  try {
    j = json::parse(document);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("landmarks: ") + e.what());
  }
  if (!j.is_array()) fail(ErrorCode::ParseError, "landmark document must be an array of rows");
  std::vector<Landmarks> rows;
  rows.reserve(j.size());
  for (std::size_t r = 0; r < j.size(); ++r) {
    const json& row = j[r];
    if (!row.is_array() || row.size() != kLandmarkCount) {
      fail(ErrorCode::ParseError, "landmark row " + std::to_string(r) + " must hold 68 points");
    }
    std::array<Point2, kLandmarkCount> pts;
    for (std::size_t i = 0; i < kLandmarkCount; ++i) {
      const json& p = row[i];
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
        fail(ErrorCode::ParseError,
             "landmark " + std::to_string(r) + "/" + std::to_string(i) + " must be an [x, y] pair");
      }
      pts[i] = {p[0].get<double>(), p[1].get<double>()};
    }
    try {
      rows.emplace_back(pts);
    } catch (const Error& e) {
      throw Error(ErrorCode::ParseError, "landmark row " + std::to_string(r) + ": " + e.what());
    }
  }
  return rows;
}

std::string serialize_landmarks(std::span<const Landmarks> rows) {
  json j = json::array();
  for (const auto& row : rows) {
    json pts = json::array();
    for (const auto& p : row.points()) pts.push_back({p.x, p.y});
    j.push_back(std::move(pts));
  }
  return j.dump();
}

std::vector<Landmarks> read_landmarks(const fs::path& path) {
  return parse_landmarks(read_text_file(path));
}

void write_landmarks(std::span<const Landmarks> rows, const fs::path& path) {
  write_text_file(path, serialize_landmarks(rows));
}

std::vector<fs::path> list_frame_files(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) fail(ErrorCode::MissingFrames, dir.string() + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && is_image_file(entry.path())) files.push_back(entry.path());
  }
  if (ec) fail(ErrorCode::IoError, "cannot list " + dir.string() + ": " + ec.message());
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });
  return files;
}

std::vector<Frame> load_frames(const fs::path& dir) {
  const auto files = list_frame_files(dir);
  if (files.empty()) fail(ErrorCode::MissingFrames, "no image files in " + dir.string());
  std::vector<Frame> frames;
  frames.reserve(files.size());
  for (const auto& f : files) {
    frames.push_back(read_frame(f));
    if (!frames.back().same_shape(frames.front())) {
      fail(ErrorCode::DimensionMismatch, f.filename().string() + " differs in size from " +
                                             files.front().filename().string());
    }
  }
  return frames;
}

Clip load_clip(const fs::path& frame_dir, const fs::path& landmark_file, std::string source_id) {
  auto frames = load_frames(frame_dir);
  auto landmarks = read_landmarks(landmark_file);
  if (landmarks.size() != frames.size()) {
    fail(ErrorCode::CountMismatch, std::to_string(frames.size()) + " frames but " +
                                       std::to_string(landmarks.size()) + " landmark rows");
  }
  if (source_id.empty()) source_id = frame_dir.filename().string();
  return Clip(std::move(frames), std::move(landmarks), std::move(source_id));
}

std::string frame_file_name(std::size_t index) {
  std::ostringstream os;
  os.width(6);
  os.fill('0');
  os << index;
  return os.str() + ".png";
}

void save_clip(const Clip& clip, const fs::path& out_dir, std::span<const ParamSet> trace,
               std::optional<std::uint64_t> master_seed) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir)) {
    fail(ErrorCode::IoError, "cannot create " + out_dir.string() + (ec ? ": " + ec.message() : ""));
  }
  for (std::size_t t = 0; t < clip.length(); ++t) write_png(clip.frame(t), out_dir / frame_file_name(t));
  write_landmarks(clip.landmarks(), out_dir / kLandmarkFileName);
  write_text_file(out_dir / kTraceFileName, serialize_trace(trace, master_seed));
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const fs::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::IoError, "cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) fail(ErrorCode::IoError, "short write to " + path.string());
}

}  // namespace pfake
