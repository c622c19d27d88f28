#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pfake/image.hpp"
#include "pfake/rpg.hpp"

namespace pfake {

/// BT.601 luma: round(0.299 R + 0.587 G + 0.114 B).
GrayImage rgb_to_gray(const Frame& frame);

/// Decodes any image OpenCV can read into RGB 8-bit. Throws DecodeError.
Frame read_frame(const std::filesystem::path& path);
/// Writes a lossless PNG. Throws IoError.
void write_png(const Frame& frame, const std::filesystem::path& path);
void write_png(const GrayImage& image, const std::filesystem::path& path);
/// Writes values * 255, rounded, as an 8-bit grayscale PNG.
void write_mask_png(const Mask& mask, const std::filesystem::path& path);
/// Reads an 8-bit grayscale image as a [0, 1] mask.
Mask read_mask_png(const std::filesystem::path& path);

/// Landmark document: JSON array of L rows, each 68 [x, y] pairs.
std::vector<Landmarks> parse_landmarks(std::string_view document);
std::string serialize_landmarks(std::span<const Landmarks> rows);
std::vector<Landmarks> read_landmarks(const std::filesystem::path& path);
void write_landmarks(std::span<const Landmarks> rows, const std::filesystem::path& path);

/// Image files of `dir` in lexicographic order.
std::vector<std::filesystem::path> list_frame_files(const std::filesystem::path& dir);
/// Decodes every frame in `dir`; throws MissingFrames / DecodeError / DimensionMismatch.
std::vector<Frame> load_frames(const std::filesystem::path& dir);

Clip load_clip(const std::filesystem::path& frame_dir, const std::filesystem::path& landmark_file,
               std::string source_id = {});

/// Zero-padded six-digit frame name, e.g. "000007.png".
std::string frame_file_name(std::size_t index);

inline constexpr const char* kTraceFileName = "trace.json";
inline constexpr const char* kLandmarkFileName = "landmarks.json";

/// Writes frames as PNG, the landmark document, and the trace sidecar.
void save_clip(const Clip& clip, const std::filesystem::path& out_dir, std::span<const ParamSet> trace,
               std::optional<std::uint64_t> master_seed = std::nullopt);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace pfake
