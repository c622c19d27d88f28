#include "pfake/pipeline.hpp"

#include <json.hpp>

#include "pfake/blender.hpp"
#include "pfake/editor.hpp"
#include "pfake/media.hpp"
#include "pfake/parallel.hpp"

namespace pfake {

namespace fs = std::filesystem;
using nlohmann::json;

GeneratedFrame generate_frame(const Frame& real, const Landmarks& landmarks, const ParamSet& params,
                              const MaskGeometry& geometry) {
  const Frame edited = edit_frame(real, landmarks, params.editor);
  const Mask mask =
      finalize_mask(build_mask(landmarks, params.mask.kind, real.height(), real.width(), geometry), params.mask);
  const auto [soft_real, soft_edited] = soften_side(real, edited, params.mask.soften_side);
  Frame out = blend(soft_real, soft_edited, mask, params.blend);

  // Background softening stays inside the matte support.
  Mask matte = effective_matte(mask, params.blend);
  auto m = matte.data();
  auto o = out.data();
  auto r = real.data();
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0.0) {
      for (int c = 0; c < 3; ++c) o[3 * i + c] = r[3 * i + c];
    }
  }
  return {std::move(out), std::move(matte)};
}

GenerationResult render_with_params(const Clip& clip, std::span<const ParamSet> params,
                                    const PipelineOptions& options) {
  if (params.size() != clip.length()) {
    fail(ErrorCode::CountMismatch, std::to_string(clip.length()) + " frames but " +
                                       std::to_string(params.size()) + " parameter sets");
  }
  if (clip.height() < kMinPipelineSide || clip.width() < kMinPipelineSide) {
    fail(ErrorCode::TooSmall, "frames must be at least 32x32");
  }
  std::vector<Frame> frames(clip.length());
  std::vector<Mask> mattes(clip.length());
  parallel_for(clip.length(), options.jobs, [&](std::size_t t) {
    try {
      auto generated = generate_frame(clip.frame(t), clip.landmarks(t), params[t], options.geometry);
      frames[t] = std::move(generated.frame);
      mattes[t] = std::move(generated.matte);
    } catch (const FrameFailure&) {
      throw;
    } catch (const Error& e) {
      throw FrameFailure(t, e.code(), e.what());
    }
  });
  return {Clip(std::move(frames), clip.landmarks(), clip.source_id()),
          std::vector<ParamSet>(params.begin(), params.end()), std::move(mattes)};
}

GenerationResult generate_pfake(const Clip& clip, std::uint64_t seed, const PipelineOptions& options) {
  RpgState rpg = make_rpg(seed, options.rpg);
  const auto params = sample_clip_params(rpg, clip.length());
  return render_with_params(clip, params, options);
}

std::vector<ManifestEntry> parse_manifest(std::string_view document, const fs::path& base_dir) {
  try {
    const json j = json::parse(document);
    if (!j.is_array()) fail(ErrorCode::ParseError, "manifest must be an array");
    std::vector<ManifestEntry> entries;
    for (const auto& item : j) {
      ManifestEntry e{item.at("frame_dir").get<std::string>(), item.at("landmark_file").get<std::string>(),
                      item.at("source_id").get<std::string>()};
      if (e.source_id.empty() || e.source_id.find_first_of("/\\") != std::string::npos ||
          e.source_id == "." || e.source_id == "..") {
        fail(ErrorCode::ParseError, "invalid source_id '" + e.source_id + "'");
      }
      if (e.frame_dir.is_relative()) e.frame_dir = base_dir / e.frame_dir;
      if (e.landmark_file.is_relative()) e.landmark_file = base_dir / e.landmark_file;
      entries.push_back(std::move(e));
    }
    return entries;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("manifest: ") + e.what());
  }
}

std::vector<ManifestEntry> read_manifest(const fs::path& path) {
  return parse_manifest(read_text_file(path), path.parent_path());
}

std::uint64_t derive_clip_seed(std::uint64_t master_seed, std::string_view source_id) {
  return combine_keys(master_seed, stable_hash(source_id));
}

std::string BatchReport::to_json() const {
  json j;
  j["succeeded"] = succeeded;
  j["failed"] = json::array();
  for (const auto& f : failed) j["failed"].push_back({{"source_id", f.source_id}, {"error", f.error}});
  j["counts"] = {{"succeeded", succeeded.size()}, {"failed", failed.size()}};
  return j.dump(2);
}

BatchReport generate_batch(std::span<const ManifestEntry> manifest, std::uint64_t master_seed,
                           const fs::path& out_root, const PipelineOptions& options) {
  std::vector<std::string> errors(manifest.size());
  PipelineOptions per_clip = options;
  per_clip.jobs = 1;
  parallel_for(manifest.size(), options.jobs, [&](std::size_t i) {
    const ManifestEntry& entry = manifest[i];
    try {
      const Clip clip = load_clip(entry.frame_dir, entry.landmark_file, entry.source_id);
      const std::uint64_t seed = derive_clip_seed(master_seed, entry.source_id);
      const GenerationResult result = generate_pfake(clip, seed, per_clip);
      save_clip(result.clip, out_root / entry.source_id, result.trace, seed);
    } catch (const std::exception& e) {
      errors[i] = e.what();
      if (errors[i].empty()) errors[i] = "unknown error";
    }
  });
  BatchReport report;
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    if (errors[i].empty()) {
      report.succeeded.push_back(manifest[i].source_id);
    } else {
      report.failed.push_back({manifest[i].source_id, errors[i]});
    }
  }
  return report;
}

}  // namespace pfake
