#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pfake/random.hpp"

namespace pfake {

enum class MaskKind {
  WholeFace,
  NarrowedFace,
  FaceWithForehead,
  FaceBoundary,
  MouthRegion,
  FacialOrgans,
};

enum class SoftenSide { None, Foreground, Background };

enum class BlendMethod { Alpha, ScaledAlpha, Hard };

std::string_view to_string(MaskKind kind);
std::string_view to_string(SoftenSide side);
std::string_view to_string(BlendMethod method);
std::optional<MaskKind> parse_mask_kind(std::string_view name);
std::optional<SoftenSide> parse_soften_side(std::string_view name);
std::optional<BlendMethod> parse_blend_method(std::string_view name);

/// True for WholeFace, NarrowedFace, FaceWithForehead.
bool is_face_group(MaskKind kind) noexcept;

struct ColorJitter {
  double brightness = 1.0;
  double contrast = 1.0;
  double saturation = 1.0;

  bool operator==(const ColorJitter&) const = default;
};

/// Which optional edits run; color jitter is unconditional.
struct EditToggles {
  bool iso_noise = false;
  bool sharpen = false;
  bool downsample = false;
  bool elastic = false;
  bool dense_warp = false;
  bool tri_stretch = false;
  bool freq_perturb = false;

  bool operator==(const EditToggles&) const = default;
};

inline constexpr std::size_t kOptionalEditCount = 7;

struct ElasticParams {
  double theta_sigma = 4.0;  // blur sigma of the displacement noise, pixels
  double theta_alpha = 0.0;  // displacement scale, pixels
  std::uint64_t noise_seed = 0;

  bool operator==(const ElasticParams&) const = default;
};

/// Image-editor parameters. Every value is drawn even when its edit is
/// disabled so the trace layout never depends on the toggles.
struct EditorParams {
  ColorJitter jitter;
  EditToggles enabled;
  double iso_sigma = 0.0;
  std::uint64_t iso_seed = 0;
  double sharpen_amount = 0.0;
  double down_scale = 0.5;
  ElasticParams elastic;
  double dense_warp_amp = 0.0;
  std::uint64_t warp_seed = 0;
  double tri_jitter = 0.0;
  std::uint64_t tri_seed = 0;
  double theta_f = 0.0;
  std::uint64_t freq_seed = 0;

  bool operator==(const EditorParams&) const = default;
};

struct MaskParams {
  MaskKind kind = MaskKind::WholeFace;
  ElasticParams deform;
  int theta_k = 3;
  SoftenSide soften_side = SoftenSide::None;

  bool operator==(const MaskParams&) const = default;
};

struct BlendParams {
  BlendMethod method = BlendMethod::Alpha;
  double alpha_scale = 1.0;

  bool operator==(const BlendParams&) const = default;
};

struct ParamSet {
  EditorParams editor;
  MaskParams mask;
  BlendParams blend;
  std::size_t segment_id = 0;

  bool operator==(const ParamSet&) const = default;
};

/// A ParamSet whose edits are all no-ops: jitter 1.0, every toggle off,
/// no mask deformation, no softening, alpha blending.
ParamSet identity_params();

struct Range {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double v) const noexcept { return v >= lo && v <= hi; }
  bool operator==(const Range&) const = default;
};

/// Sampling ranges and probabilities. Overridable through a config document.
struct RpgConfig {
  Range brightness{0.7, 1.3};
  Range contrast{0.7, 1.3};
  Range saturation{0.7, 1.3};
  Range iso_sigma{2.0, 10.0};
  Range sharpen_amount{0.3, 1.0};
  Range down_scale{0.25, 0.75};
  Range elastic_sigma{4.0, 8.0};
  Range elastic_alpha{10.0, 40.0};
  Range dense_warp_amp{2.0, 8.0};
  Range tri_jitter{1.0, 4.0};
  Range theta_f{0.0, 2.0};
  Range mask_sigma{4.0, 8.0};
  Range mask_alpha{10.0, 40.0};
  Range alpha_scale{0.5, 1.0};
  double edit_probability = 0.3;
  double face_group_probability = 0.75;
  int segment_min = 1;
  int segment_max = 8;

  /// Throws InvalidArgument when a range violates a parameter invariant.
  void validate() const;

  bool operator==(const RpgConfig&) const = default;
};

inline constexpr int kMaskKernelSizes[] = {3, 5, 7, 9, 11};

/// Applies the keys present in a JSON config document over `base`.
/// Unknown keys are rejected with ParseError.
RpgConfig parse_config(std::string_view document, RpgConfig base = {});
std::string describe_config(const RpgConfig& config);

/// Per-clip generator state. Single owner; draws are a pure function of
/// (seed, config, call sequence).
class RpgState {
 public:
  RpgState(std::uint64_t seed, RpgConfig config);

  std::uint64_t seed() const noexcept { return seed_; }
  const RpgConfig& config() const noexcept { return config_; }

  /// Draws the length of the next segment.
  int next_segment_length();
  /// Draws the parameters of the next segment and advances the segment index.
  ParamSet next_segment_params();

 private:
  std::uint64_t seed_;
  RpgConfig config_;
  RandomStream lengths_;
  std::size_t next_segment_ = 0;
};

RpgState make_rpg(std::uint64_t seed, RpgConfig config = {});

/// Draws one full ParamSet from `stream`; the draw order is fixed.
ParamSet draw_param_set(RandomStream& stream, const RpgConfig& config);

/// num_frames ParamSets split into contiguous segments whose lengths are
/// uniform on [segment_min, segment_max]; frames of a segment share one set.
std::vector<ParamSet> sample_clip_params(RpgState& rpg, std::size_t num_frames);

inline constexpr std::string_view kTraceSchema = "pfake-trace/1";

struct Trace {
  std::optional<std::uint64_t> master_seed;
  std::vector<ParamSet> params;
};

std::string serialize_trace(std::span<const ParamSet> params,
                            std::optional<std::uint64_t> master_seed = std::nullopt);
/// Throws ParseError on malformed or incomplete documents.
Trace parse_trace_document(std::string_view document);
std::vector<ParamSet> parse_trace(std::string_view document);

/// Throws InvalidArgument when a ParamSet violates its invariants.
void validate(const ParamSet& params);

}  // namespace pfake
