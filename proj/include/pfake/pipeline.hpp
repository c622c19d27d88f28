#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pfake/image.hpp"
#include "pfake/mask.hpp"
#include "pfake/rpg.hpp"

namespace pfake {

/// Training label convention: real clips are 0, p-fake (and fake) clips are 1.
inline constexpr int kRealLabel = 0;
inline constexpr int kPfakeLabel = 1;

struct PipelineOptions {
  RpgConfig rpg;
  MaskGeometry geometry;
  unsigned jobs = 1;  // frame-level workers; 0 = all cores
};

struct GeneratedFrame {
  Frame frame;
  Mask matte;  // effective compositing matte
};

struct GenerationResult {
  Clip clip;
  std::vector<ParamSet> trace;
  std::vector<Mask> mattes;
};

/// One p-fake frame: edit, build and finalize the mask, soften, blend.
/// Pixels whose effective matte is 0 are copied from `real` unchanged.
GeneratedFrame generate_frame(const Frame& real, const Landmarks& landmarks, const ParamSet& params,
                              const MaskGeometry& geometry = {});

/// Renders `clip` under a given trace (replay). Throws FrameFailure.
GenerationResult render_with_params(const Clip& clip, std::span<const ParamSet> params,
                                    const PipelineOptions& options = {});

/// Samples a trace from `seed` and renders the p-fake clip. Frames must be
/// at least 32 x 32. Throws FrameFailure naming the failing frame.
GenerationResult generate_pfake(const Clip& clip, std::uint64_t seed, const PipelineOptions& options = {});

struct ManifestEntry {
  std::filesystem::path frame_dir;
  std::filesystem::path landmark_file;
  std::string source_id;

  bool operator==(const ManifestEntry&) const = default;
};

/// Manifest document: JSON array of {frame_dir, landmark_file, source_id}.
/// Relative paths are resolved against `base_dir`.
std::vector<ManifestEntry> parse_manifest(std::string_view document, const std::filesystem::path& base_dir = {});
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path);

/// Stable per-clip seed from (master_seed, source_id).
std::uint64_t derive_clip_seed(std::uint64_t master_seed, std::string_view source_id);

struct BatchFailure {
  std::string source_id;
  std::string error;
};

struct BatchReport {
  std::vector<std::string> succeeded;
  std::vector<BatchFailure> failed;

  std::string to_json() const;
};

/// Generates every clip of the manifest into out_root/source_id. Per-clip
/// failures are recorded and the batch continues. options.jobs sets the
/// number of clips processed concurrently.
BatchReport generate_batch(std::span<const ManifestEntry> manifest, std::uint64_t master_seed,
                           const std::filesystem::path& out_root, const PipelineOptions& options = {});

}  // namespace pfake
